"""
Running an experiment from a config file
========================================

The same experiments are available through ``entperc run``. Here we write a
config, validate it, run it and read back the manifest.
"""

import json
import tempfile
from pathlib import Path

from entperc.cli import main

tmp = Path(tempfile.mkdtemp())
cfg = tmp / "compare.ini"
cfg.write_text("""\
[experiment]
kind = compare
seed = 42

[generator]
kind = er
N = 20000
z = 2.5

[strategy]
q = 2, 3

[sweep]
phi = 0.1:1:10
replicas = 2
""")

assert main(["validate", "--config", str(cfg)]) == 0
main(["run", "--config", str(cfg), "--out", str(tmp / "out")])
print((tmp / "out" / "compare.csv").read_text())
manifest = json.loads((tmp / "out" / "manifest.json").read_text())
print("summary:", manifest["summary"])
