"""
Which measure has which property
================================

Each of the eight properties is checked on 50 seeded random model pairs
for every measure. ``Y`` marks a satisfied property; ``!`` marks a cell
that disagrees with the expected table, and the witness is printed.
"""

from stochdom.properties import EXPECTED_PROPERTIES, PropertyTrialConfig, run_property_suite

cfg = PropertyTrialConfig(trials=50, seed=0, tolerance=1e-4)
print("%-12s %s" % ("measure", " ".join(str(p) for p in range(1, 9))))
witnesses = []
for m in EXPECTED_PROPERTIES:
    report = run_property_suite(m, cfg)
    cells = []
    for p, r in sorted(report.results.items()):
        mark = "Y" if r.passed else "."
        if r.passed != r.expected:
            mark = "!"
            witnesses.append((m, p, r.witness))
        cells.append(mark)
    print("%-12s %s" % (m, " ".join(cells)))

for m, p, w in witnesses:
    print()
    print("%s, property %d:" % (m, p))
    for k, v in w.items():
        if isinstance(v, float):
            print("  %s = %.6f" % (k, v))
        elif not hasattr(v, "components"):
            print("  %s = %s" % (k, v))
