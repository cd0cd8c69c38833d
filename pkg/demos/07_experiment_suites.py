"""
Experiment suites and reports
=============================

Every quantitative claim the toolkit makes is backed by a named suite: a
batch of randomized cases with measured ratios, fitted constants, and a
pass verdict per case.  Suites run programmatically through ``run_suite``
or from the command line (``python3 -m sparsedom run config.json``); both
paths produce the same JSON and CSV reports.
"""

from sparsedom import SUITES, resolve_config, run_suite

# the registry maps names to one-line descriptions
print(f"{len(SUITES)} registered suites:")
for name in sorted(SUITES):
    print(f"  {name:20s} {SUITES[name].description}")

# partial configurations are filled from defaults and validated
defaults = resolve_config()
cfg = resolve_config({"resolution": 64, "seeds": [0, 1, 2, 3]})
print(f"\nresolved config keys: {sorted(cfg)}")
print(f"defaults: r = {defaults['r']}, p = {defaults['p']}, "
      f"{len(defaults['seeds'])} seeds")

# a small sparsity run: every decomposition must certify at eta = 0.5/9^d
report = run_suite("sparsity", {"resolution": 64, "seeds": [0, 1, 2, 3]})
print(
    f"\nsuite {report.experiment!r}: {len(report.cases)} cases, "
    f"passed = {report.passed}, wall time {report.wall_time:.2f} s"
)
for key, val in sorted(report.summary.items()):
    print(f"  summary {key} = {val}")

# reports serialize to JSON (full payload) and CSV (one row per case)
csv_lines = report.to_csv().splitlines()
print(f"\nCSV header: {csv_lines[0]}")
print(f"first row:  {csv_lines[1]}")
print(f"JSON payload: {len(report.to_json())} bytes")

# the weak-type suite sweeps power weights and rescalings of the data;
# the fitted constant stays below the theorem-shaped bound on every case
wt = run_suite("weak_type", {"resolution": 64, "seeds": [0, 1]})
worst = max(c["ratio"] for c in wt.cases if c["ratio"] is not None)
print(
    f"\nsuite 'weak_type': {len(wt.cases)} cases, passed = {wt.passed}, "
    f"worst ratio {worst:.4f}"
)
