#!/usr/bin/env python3
"""
lawson-forge - Main Entry Point

Command-line interface for generating, verifying and reconstructing
discrete CMC nets.

Usage:
    python main.py <command> [options]

Examples:
    python main.py generate --ambient r3 --ambient s3 --out out
    python main.py lawson --config config_random.json --gamma 0.7853981633974483 0.5235987755982988
    python main.py verify out/net_r3.json
    python main.py reconstruct out/net_s3_0.json --out recovered
    python main.py export out/net_s3_0.json --out minimal.obj
"""

import sys

from lawson_forge.main import main


if __name__ == "__main__":
    sys.exit(main())
