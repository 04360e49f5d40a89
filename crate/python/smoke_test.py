"""Smoke test for the algcps_py extension module.

Build and install it first:

    pip install --no-build-isolation -e crates/python
"""

import algcps_py as a

copy_sum = a.Term(r"(\x. \f. f x x) (y + z)")

outcome, result, steps = a.normalize(copy_sum, "lin")
assert outcome == "value", outcome
assert result.canonical() == a.Term(r"(\f. f y y) + \f. f z z").canonical(), result
assert steps, "expected a non-empty trace"

outcome, result, _ = a.normalize(copy_sum, "alg")
assert result == a.Term(r"\f. f (y + z) (y + z)"), result

assert str(a.cps(a.Term("x"), "v2n")) == r"\k. k x"
assert a.invert(a.Term("k x"), "v2n") == a.Term("x")
assert a.classify(a.Term("k x"), "v2n") == "BaseComputation"

start = a.cps(copy_sum, "n2v", apply_k=True)
goal = a.colon(a.Term(r"\f. f (y + z) (y + z)"), a.Term("k"), "n2v")
witness = a.reachable(start, goal, "lin")
assert witness is not None and len(witness) > 0

report = a.check("inverse-term", "v2n", instances=50)
assert report.attempted == 50 and not report.failures, report.summary

try:
    a.Term(r"\x. (")
except ValueError as e:
    print("parse error reported:", e)
else:
    raise AssertionError("expected a parse error")

print("ok:", report.summary)
