"""Certify a pair of matrices stored as JSON, the same way the CLI does.

Equivalent shell session:

    freepairs certify --input pair.json --place place.json
"""

import json
import tempfile
from pathlib import Path

from freepairs.cli import main

work = Path(tempfile.mkdtemp())
(work / "pair.json").write_text(json.dumps({
    "A": [["(1+b+j)^2", "0"], ["0", "(1+b-j)^2"]],
    "B": [["1+a-a*b", "-2*(1+j)"], ["2*a*(-1+j)", "1+a-a*b"]],
}))
# a place given by its data instead of by name: the prime 1+b+b^2 of Q(b), split in F(j)
(work / "place.json").write_text(json.dumps({
    "minpoly": "j^2-b",
    "base_var": "b",
    "base_prime": "1+b+b^2",
    "gen_image": "-(1+b)",
    "uniformizer": "1+b+j",
    "name": "mu",
}))

print("== certify ==")
code = main(["certify", "--input", str(work / "pair.json"), "--place", str(work / "place.json")])
print("exit status", code)

print("== classify an order-two matrix ==")
main(["classify", "--matrix", "1,0,1,-1"])
