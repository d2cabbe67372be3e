"""Run every stage from a config file and list what was written.

    python demos/full_pipeline.py [out_dir]
"""

import sys
from pathlib import Path

from lexpand.pipeline import RunConfig, run_pipeline

conf = Path(__file__).resolve().parent.parent / "testdata" / "pipeline.conf"
cfg = RunConfig.load(conf)
cfg.out_dir = sys.argv[1] if len(sys.argv) > 1 else "lexpand-demo-out"

summary = run_pipeline(cfg)
for key, value in summary.items():
    print(f"{key:14} {value}")
print()
print(Path(summary["results"]).read_text())
