"""Exact-arithmetic derivation of the 12-item agreement fixture.

Computes Spearman's rho (average ranks), quadratically weighted kappa,
and ICC(2,1) with Fractions straight from the definitional formulas, and
prints decimals to freeze into the test suite. Run once; results are
committed literals.
"""

from fractions import Fraction

A = [1, 2, 3, 4, 5, 3, 2, 4, 1, 5, 3, 2]
B = [2, 2, 3, 5, 4, 3, 1, 4, 2, 5, 3, 3]
K = 5


def average_ranks(values):
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [Fraction(0)] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = Fraction(i + j, 2) + 1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def spearman(a, b):
    ra, rb = average_ranks(a), average_ranks(b)
    n = len(a)
    ma = sum(ra) / n
    mb = sum(rb) / n
    da = [x - ma for x in ra]
    db = [x - mb for x in rb]
    num = sum(x * y for x, y in zip(da, db))
    ssa = sum(x * x for x in da)
    ssb = sum(x * x for x in db)
    # rho = num / sqrt(ssa*ssb); print rho^2 pieces to keep exactness,
    # final value via high-precision float of the exact ratio
    import decimal

    decimal.getcontext().prec = 60
    num_d = decimal.Decimal(num.numerator) / decimal.Decimal(num.denominator)
    den_sq = ssa * ssb
    den_d = (decimal.Decimal(den_sq.numerator) / decimal.Decimal(den_sq.denominator)).sqrt()
    return num_d / den_d


def kappa_w(a, b):
    n = len(a)
    observed = [[Fraction(0)] * K for _ in range(K)]
    for x, y in zip(a, b):
        observed[x - 1][y - 1] += 1
    row = [sum(observed[i]) for i in range(K)]
    col = [sum(observed[i][j] for i in range(K)) for j in range(K)]
    weight = [[1 - Fraction((i - j) ** 2, (K - 1) ** 2) for j in range(K)] for i in range(K)]
    p_o = sum(weight[i][j] * observed[i][j] for i in range(K) for j in range(K)) / n
    p_e = sum(weight[i][j] * row[i] * col[j] for i in range(K) for j in range(K)) / (n * n)
    return (p_o - p_e) / (1 - p_e)


def icc21(a, b):
    n, k = len(a), 2
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    grand = (sum(a) + sum(b)) / (n * k)
    row_means = [(x + y) / 2 for x, y in zip(a, b)]
    col_means = [sum(a) / n, sum(b) / n]
    ss_rows = k * sum((m - grand) ** 2 for m in row_means)
    ss_cols = n * sum((m - grand) ** 2 for m in col_means)
    ss_total = sum((v - grand) ** 2 for v in a + b)
    ss_error = ss_total - ss_rows - ss_cols
    msr = ss_rows / (n - 1)
    msc = ss_cols / (k - 1)
    mse = ss_error / ((n - 1) * (k - 1))
    return (msr - mse) / (msr + (k - 1) * mse + Fraction(k, n) * (msc - mse))


if __name__ == "__main__":
    rho = spearman(A, B)
    kw = kappa_w(A, B)
    icc = icc21(A, B)
    print(f"A = {A}")
    print(f"B = {B}")
    print(f"spearman_rho = {rho}")
    print(f"weighted_kappa = {kw} = {float(kw)!r}")
    print(f"icc_2_1 = {icc} = {float(icc)!r}")
