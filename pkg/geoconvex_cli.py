#!/usr/bin/env python3
"""
geoconvex - Hermite-Hadamard type bounds for s-geometrically convex functions
"""

import multiprocessing
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from geoconvex.cli.main import main

if __name__ == "__main__":
    # sweep workers in a frozen binary
    multiprocessing.freeze_support()
    sys.exit(main())
