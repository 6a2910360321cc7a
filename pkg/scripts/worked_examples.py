"""Reproduce every worked example of the bundled corpus through the CLI.

    python3 scripts/worked_examples.py            # all sections
    python3 scripts/worked_examples.py hopf cp2   # selected sections
"""
import sys

from bautq.cli import run

SECTIONS = {
    "hopf": [
        "basis --model HopfTotal --range 1..9",
        "homology --model S4",
        "separable --relative Hopf",
    ],
    "counterexamples": [
        "separable --relative Counter1",
        "delta --relative Counter1",
        "section --relative Counter1",
        "delta --relative Counter2",
        "section --relative Counter2",
        "delta --relative SU6F",
    ],
    "cp2": [
        "obstruct --problem CP2",
        "obstruct --problem CP2triv",
    ],
    "tori": [
        "rel-homology --relative Ex5a --range 1..8",
        "pi-odd --relative Ex5a",
        "rel-homology --relative Ex5b --range 1..4",
        "pi-odd --relative Ex5b",
        "obstruct --problem Lift5b",
    ],
    "halperin": [
        "halperin --model S2",
        "halperin --model S4",
        "halperin --model CP2",
        "halperin --model NonCI --allow-non-f0",
    ],
    "fiber": [
        "fiber-dims --relative Counter1 --range 1..10",
        "cstar --model S4 --cutoff 9",
    ],
    "borel": [
        "borel --borel S1onS3 --range 0..8",
        "borel --borel TrivS3 --range 0..8",
    ],
}


def main(names):
    status = 0
    for name in names or SECTIONS:
        print(f"== {name}")
        for cmd in SECTIONS[name]:
            print(f"$ bautq {cmd}")
            code = run(cmd.split())
            if code:
                print(f"[exit {code}]")
                status = max(status, code)
        print()
    return status


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
