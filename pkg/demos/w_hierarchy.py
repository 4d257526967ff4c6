"""Growth of the W hierarchy and the shape of its elements.

Run: python demos/w_hierarchy.py [depth]   (default 3; 4 takes a few seconds)
"""
import sys

from zfp import whier

depth = int(sys.argv[1]) if len(sys.argv) > 1 else 3
u = whier.build_w(depth)
for k, tier in enumerate(u.tiers):
    sets = sum(whier.is_mset(x) for x in tier)
    print(f"W_{k}: {len(tier):>7} objects  ({sets} m-sets, {len(tier) - sets} m-pairs)")

if depth <= 3:
    print()
    print("elements of the top stage (m-sets as {..}, m-pairs as (a,b)):")
    for x in sorted(u.domain, key=lambda v: (u.rank[v], whier.render_m(v))):
        kind = "pair" if whier.is_mpair(x) else "set "
        print(f"  rank {u.rank[x]}  {kind}  {whier.render_m(x)}")
