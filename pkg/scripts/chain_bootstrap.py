"""Run the merge bootstrap on the four-word chain fixture and print the
per-round ledger, optionally with a different acceptance threshold.

    python scripts/chain_bootstrap.py [THRESHOLD]
"""

import json
import sys
from fractions import Fraction

from wnbuild.fixtures import chain_fixture
from wnbuild.merger import bootstrap


def run(threshold: Fraction) -> None:
    fx = chain_fixture()
    res = bootstrap(fx["A"], fx["B"], fx["taxonomies"], fx["g"], fx["conf_table"], threshold)
    print(f"threshold {float(threshold):.2f}: {res.rounds} rounds, A {sorted(fx['A'])} -> {sorted(res.A)}")
    for r in res.ledger:
        print(json.dumps(r.as_dict(), sort_keys=True))


if __name__ == "__main__":
    run(Fraction(sys.argv[1]) if len(sys.argv) > 1 else Fraction(8, 10))
