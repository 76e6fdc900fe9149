"""
Brooks AT - Main Entry Point

    python main.py pipeline --graph K4-e --seed 7
    python main.py classify --input graph.txt --json
"""

import sys

from core.cli import main

if __name__ == "__main__":
    sys.exit(main())
