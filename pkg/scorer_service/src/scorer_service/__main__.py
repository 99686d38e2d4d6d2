"""Run the service: scorer-service [--host H] [--port P] [--mode mock|real]."""

import argparse

import uvicorn

from .app import create_app
from .hashing import DEFAULT_EMBED_DIM


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="scorer-service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8801)
    parser.add_argument("--mode", choices=("mock", "real"), default="mock")
    parser.add_argument("--embed-dim", type=int, default=DEFAULT_EMBED_DIM)
    args = parser.parse_args(argv)
    app = create_app(mode=args.mode, embed_dim=args.embed_dim)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
