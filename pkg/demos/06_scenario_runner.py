# Driving the engine from declarative scenario files.
#
# A scenario is a JSON document naming a space, a field, a Gram matrix and
# a list of tasks. Reports come back as plain dictionaries with every
# certificate recomputed, so they are safe to diff across runs. The same
# documents work from the command line:
#
#   python -m sheafforms run scenario.json --seed 7
#   python -m sheafforms oracle orthosymmetry_dichotomy --field gf:3

import json

from sheafforms.scenario import report_to_json, run_scenario_dict

doc = {
    "space": {
        "points": ["a", "b"],
        "opens": [[], ["a"], ["a", "b"]],
    },
    "field": "rationals",
    "rank": 2,
    "gram": [[["0", "1"], ["-1", "0"]]],
    "tasks": [
        {"op": "classify"},
        {"op": "normal_form"},
        {"op": "symplectic_basis", "partial": {"r": {}, "s": {}}},
        {"op": "decomposition"},
        {
            "op": "envelope",
            "submodule": {
                "generators": [{"open": ["a", "b"], "vectors": [["1", "0"]]}]
            },
        },
        {"op": "oracle", "suite": "scholium_invertibility", "seed": 3},
    ],
}

report = run_scenario_dict(doc, seed=7)
print("ok:", report["ok"])
for task in report["tasks"]:
    print(f"  {task['op']}: {task['status']}")

# The full report is deterministic JSON, certificates included.
text = report_to_json(report)
print("normal_form certificate:", json.loads(text)["tasks"][1]["certificate"])
