"""Materialize the bundled toy dataset and run every stage on it.

    python scripts/run_toy_pipeline.py [WORKDIR]
"""

import sys
import tempfile
from pathlib import Path

from wnbuild.cli import main

if __name__ == "__main__":
    work = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="wnbuild-"))
    code = main(["--seed-fixture", str(work), "run"])
    print(f"\nartifacts in {work / 'out'}")
    sys.exit(code)
