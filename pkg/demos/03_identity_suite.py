"""Run the identity registry on the default grid and summarize it.

Run with ``python3 demos/03_identity_suite.py`` (about 15 seconds).
"""
from qlommel import QContext, run_suite

report = run_suite(QContext(0.5))
for id_, s in report.summary.items():
    status = "ok  " if s["passed"] else "FAIL"
    where = ""
    if not s["passed"]:
        where = "  at q = " + ", ".join(sorted({str(f["q"]) for f in s["failures"]}))
    print(f"{status} {id_:13} cases {s['count']:2}  max residual {s['max_residual']:.1e}{where}")

# limit-type entries converge geometrically in q, so a fixed 10/20/40 ladder
# is not long enough at the larger q values
print("\nall passed:", report.passed)
