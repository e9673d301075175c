"""Regenerate the q=2, r=3 golden files used by the test suite.

Run from the repository root:  python3 scripts/make_golden.py
"""

from pathlib import Path

from drinfeld_modpoly.cli import JobSpec, run
from drinfeld_modpoly.invariants import known_invariants

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def golden_name(J, iso_type: str) -> str:
    return f"q2_r3_{J.name}_{iso_type}.json"


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for J in known_invariants(2, 3):
        for t in ("outgoing", "incoming"):
            status, text = run(JobSpec("compute", 2, 3, (J.e,), t, threads=1))
            assert status == 0
            (GOLDEN / golden_name(J, t)).write_text(text)
            print("wrote", golden_name(J, t))


if __name__ == "__main__":
    main()
