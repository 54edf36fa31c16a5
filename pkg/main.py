"""
q-Dedekind audit - Entry Point

Exact computations and an executable claims ledger for q-Euler numbers,
fermionic p-adic q-integrals and Dedekind-type DC sums.

Usage:
    python main.py compute euler-modified -n 0 -q 2
    python main.py verify --claim eq5-B
    python main.py oracle --family carlitz -m 1 -p 3 -q 4 --maxN 6

Environment Variables:
    Q_DEDEKIND_OUTPUT_DIR - Directory for claim reports (default: reports)
"""

from src.q_dedekind.cli import run

if __name__ == "__main__":
    run()
