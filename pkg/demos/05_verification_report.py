"""Run the complete verification suite and print the report.

The same checks back the ``phasewave check --suite all`` command and the
acceptance tests; the whole run takes a few seconds.
"""

import json

from phasewave import run_suite

report = run_suite(("all",))
for line in report.lines():
    print(line)

with open("verification_report.json", "w") as fh:
    json.dump(report.to_dict(), fh, indent=1)
print("machine-readable copy written to verification_report.json")
