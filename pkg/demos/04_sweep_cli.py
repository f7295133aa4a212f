"""
Driving the command-line sweep from Python
==========================================

`squidwave` writes a CSV series and a JSON manifest. Here two runs are
produced in a temporary directory and differenced with ``diff_runs``.
The shell equivalent is::

    squidwave --state coherent-sep --out sep.csv
    squidwave --state coherent-ent --out ent.csv
    squidwave diff sep.csv ent.csv --out sep_minus_ent.csv
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from squidwave import cli

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    for kind in ("coherent-sep", "coherent-ent"):
        status = cli.main(["--state", kind, "--steps", "400", "--out", str(tmp / f"{kind}.csv")])
        print(kind, "exit status", status)

    manifest = json.loads(cli.manifest_path(tmp / "coherent-ent.csv").read_text())
    print("self-check passed:", manifest["self_check"]["passed"])
    print("max discrepancies:", manifest["self_check"]["max_discrepancy"])

    diff = cli.diff_runs(tmp / "coherent-sep.csv", tmp / "coherent-ent.csv")
    print("largest |<I_A>_sep - <I_A>_ent| :", np.max(np.abs(diff["i_a"])))
    print("largest |R_sep - R_ent|         :", np.nanmax(np.abs(diff["ratio_r"])))

    # A deliberately under-truncated run trips the self-check
    status = cli.main(["--state", "coherent-ent", "--dim", "6", "--out", str(tmp / "bad.csv")])
    print("dim=6 exit status", status)
