"""Encoding artefacts of Kuratowski pairs, and why primitive pairs avoid them.

Run: python demos/accidental_theorems.py
"""
from zfp import hf, whier
from zfp.checker import accidental_suite

b, c = hf.vn(1), hf.vn(2)
p = hf.kpair(b, c)
print(f"<1,2> as a set:        {hf.render(p)}")
print(f"{{1}} is a member of it: {hf.mem(hf.singleton(b), p)}")
print(f"{{<0,0>}} == <1,1>:      {hf.singleton(hf.kpair(hf.vn(0), hf.vn(0))) is hf.kpair(hf.vn(1), hf.vn(1))}")

e = whier.mset(())
q = whier.mpair(e, whier.mset([e]))
print(f"\nin W, the m-pair {whier.render_m(q)} is stored as {hf.render(q)}")
print(f"its memh-members: {[hf.render(a) for a in whier.build_w(3).domain if whier.mem_hat(a, q)]}")

print("\nfull suite (V_3 and W_4):")
for it in accidental_suite():
    print(f"  {'ok ' if it.holds else 'BAD'} {it.name}  [{it.cases} cases]")
