"""Compare every dimension and verdict on the corpus against the independent test oracle."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracle_compare import compare_all  # noqa: E402

from bautq.corpus import CORPUS  # noqa: E402
from bautq.dsl import parse  # noqa: E402

bad = compare_all(parse(CORPUS))
for line in bad:
    print("MISMATCH", line)
print(f"{compare_all.checked} quantities compared, {len(bad)} mismatches")
sys.exit(1 if bad else 0)
