"""The command-line front end, driven in-process.

Equivalent shell commands:
    egnh eval hrf --alpha 2 --a 3 --beta 1 --b 1 --x 7
    egnh --format jsonl fit --data kevlar
    egnh analyze entropy --alpha 3 --beta 3 --a 0.5 --b 0.5 --lambda-grid 0.5,2,5

Run: python3 demos/06_cli.py
"""

import io
import json

from egnh import cli


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), stdout=out)
    return code, out.getvalue()


print(run("eval", "hrf", "--alpha", "2", "--a", "3", "--beta", "1", "--b", "1", "--x", "7")[1])
code, text = run("--format", "jsonl", "fit", "--data", "kevlar")
doc = json.loads(text)
print("exit", code, "| schema", doc["schema_version"], "| estimates", doc["payload"]["fit"]["estimates"])
print(run("analyze", "entropy", "--alpha", "3", "--beta", "3", "--a", "0.5", "--b", "0.5", "--lambda-grid", "0.5,2,5")[1])
