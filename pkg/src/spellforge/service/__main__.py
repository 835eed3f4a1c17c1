"""python -m spellforge.service [port] -- start the gateway."""

import sys

import uvicorn

from .app import create_app

if __name__ == "__main__":
    port = int(sys.argv[1]) if len(sys.argv) > 1 else 8765
    uvicorn.run(create_app(), host="127.0.0.1", port=port, log_level="warning")
