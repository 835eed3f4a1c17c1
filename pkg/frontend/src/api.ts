/** REST client for the gateway. A 502 resolves normally: the body still
 * carries the fizzle fallback, which the views must render. */

import type { CastResponse, MaterialResponse, Mode, SessionInfo } from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async post(path: string, body: unknown, okStatuses: number[]): Promise<{ status: number; body: any }> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!okStatuses.includes(response.status)) {
      throw new ApiError(`${path} failed: ${response.status}`, response.status);
    }
    return { status: response.status, body: await response.json() };
  }

  async openSession(mode: Mode, provider = "mock"): Promise<SessionInfo> {
    const { body } = await this.post("/api/session", { mode, provider }, [201]);
    return body as SessionInfo;
  }

  async cast(sessionId: string, description: string): Promise<CastResponse> {
    const { status, body } = await this.post(`/api/session/${sessionId}/cast`, { description }, [200, 502]);
    return { status, ...body } as CastResponse;
  }

  async material(sessionId: string, description: string): Promise<MaterialResponse> {
    const { status, body } = await this.post(`/api/session/${sessionId}/material`, { description }, [200, 502]);
    return { status, ...body } as MaterialResponse;
  }

  frameStreamUrl(sessionId: string): string {
    return `${this.baseUrl.replace(/^http/, "ws")}/api/session/${sessionId}/frames`;
  }
}
