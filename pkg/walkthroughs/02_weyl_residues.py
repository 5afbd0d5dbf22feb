"""The Weyl algebra with s* = t: the matrices W, U, V and their residues.

Also shows where the printed residue table comes from: a copy of W whose
(3, 2) entry is (i+1)^2 instead of (i+2)^2.
"""

from freepairs.algebras import cyc_reg_rep
from freepairs.places import named_place
from freepairs.scenarios import (
    WEYL1_RESIDUE_NAMES,
    listing_W,
    printed_residue_table,
    run_weyl,
    weyl1_residue_table,
)
from freepairs.weyl import WeylElem, weyl_to_cyclic

s, t = WeylElem.gens()
r = s * t * s - t * s * t
print("== 1. r = sts - tst in normal order ==")
print("  ", r)

print("== 2. its image in the cyclic algebra and the matrix W ==")
W = cyc_reg_rep(weyl_to_cyclic(r))
for row in W.to_strings():
    print("  ", row)

print("== 3. residues at P(1+i^2) ==")
pl = named_place("P(1+i^2)")
print("   residue field:", pl.residue_desc)
ours = weyl1_residue_table(W)
listing = weyl1_residue_table(listing_W())
printed = printed_residue_table()
print(f"   {'entry':<9} {'computed':<34} {'listing W':<34} printed")
for k in WEYL1_RESIDUE_NAMES:
    print(f"   {k:<9} {ours[k]:<34} {listing[k]:<34} {printed[k]}")

print("== 4. the scenario verdict ==")
report = run_weyl(1)
print("   verdict:", report.verdict, " U valuations:", report.certificate.eigen_valuations)
