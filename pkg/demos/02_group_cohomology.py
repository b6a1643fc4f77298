"""Continuous cohomology of Z_p^x acting on the Laurent coefficients.

The whole computation reduces to the two-term complex id - psi_* per
internal degree; this walks the per-character answer and the graded table.

Run with: python3 demos/02_group_cohomology.py
"""

from imj.grpcoh import abutment, character_cohomology

p, N = 3, 8

print("Per-character cohomology, psi acting through psi^k:")
for k in (0, 1, 2, 4, 6, 18):
    h0, h1, tv = character_cohomology(k, p, N)
    print(f"  k={k}: h0={h0} h1={h1} torsion_valuation={tv}")
print("Only k = 0 carries rational classes; elsewhere the answer is the")
print("finite cyclic group cut out by v_3(1 - psi^k).\n")

print("Graded table over internal degrees -24..24 (u-powers doubled):")
report = abutment(p, (-24, 24), N)
for line in report.table_lines():
    print(" ", line)
print()
print("Z_3 twice at t = 0, Z/3^{1+v} on the 2(p-1)k line: the familiar")
print("image-of-J pattern at height one.")
