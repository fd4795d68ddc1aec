"""Regenerate src/bookknots/data/reference_knots.json.

Reference diagrams are closures of standard braid representatives,
reduced with Reidemeister I/II moves and stored as PD codes together with
the fingerprint they produce.  Run from the repository root:

    python scripts/make_fixtures.py
"""

import json
from pathlib import Path

from bookknots.braids import BraidWord, braid_closure_diagram
from bookknots.diagram import Diagram, pd_code, simplify
from bookknots.invariants import fingerprint

BRAIDS = {
    "unknot": None,
    "3_1": (2, [1, 1, 1]),
    "4_1": (3, [1, -2, 1, -2]),
    "5_1": (2, [1] * 5),
    "5_2": (3, [1, 1, 1, 2, -1, 2]),
    "6_1": (4, [1, 1, 2, -1, -3, 2, -3]),
    "6_2": (3, [1, 1, 1, -2, 1, -2]),
    "7_1": (2, [1] * 7),
    "8_19": (3, [1, 2] * 4),
    "10_124": (3, [1, 2] * 5),
    "3_1#3_1": (3, [1, 1, 1, 2, 2, 2]),
}


def main():
    records = []
    for name, spec in BRAIDS.items():
        if spec is None:
            d = Diagram(((),), ())
            source = "crossingless circle"
        else:
            strands, letters = spec
            d = simplify(braid_closure_diagram(BraidWord(strands, tuple(letters))))
            source = f"closure of braid {' '.join(map(str, letters))} on {strands} strands"
        assert d.component_count == 1, name
        records.append({
            "name": name,
            "source": source,
            "pd": [list(x) for x in pd_code(d)],
            "fingerprint": fingerprint(d).to_text(),
        })
    out = Path(__file__).resolve().parents[1] / "src/bookknots/data/reference_knots.json"
    out.write_text(json.dumps({"version": 1, "knots": records}, indent=1) + "\n")
    for r in records:
        print(r["name"], r["fingerprint"])


if __name__ == "__main__":
    main()
