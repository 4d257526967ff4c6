"""Check both axiom catalogues in small finite stages and show what a
too-small margin looks like.

Run: python demos/check_axioms.py
"""
from zfp.abbrev import ZF, ZFP
from zfp.axioms import parse_axiom_id
from zfp.checker import GENERIC, WITNESS, CheckPlan, check_all, check_axiom


def show(reports):
    for r in reports:
        extra = f"  counterexample {r.counterexample}" if r.counterexample else ""
        print(f"  {r.axiom:<36} {r.mode:<8} m={r.margin}  {r.status}{extra}")


print("ZFP in W(3), exhaustive search:")
show(check_all(ZFP, 3, GENERIC))
print("\nZF in V(3), witness terms:")
show(check_all(ZF, 3, WITNESS))
print("\nPower set with no margin: the witness for the top stage is missing")
show([check_axiom(CheckPlan(parse_axiom_id("zf.PowerSet"), 3, GENERIC, margin=0))])
