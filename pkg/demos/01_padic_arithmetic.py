"""Precision-tracked p-adic arithmetic, the ground floor of everything else.

Run with: python3 demos/01_padic_arithmetic.py
"""

from imj.padic import PadicInt, binom, psi_generator, teichmuller

p, N = 3, 6
print(f"Working in Z/{p}^{N}, i.e. {p}-adic integers to {N} digits.\n")

a = PadicInt(14, p, N)
b = PadicInt(41, p, N)
print(f"a = {a.residue}, b = {b.residue} (mod {p}^{N})")
print(f"a + b = {(a + b).residue}, a * b = {(a * b).residue}")
print(f"v_3(a) = {a.valuation()}, v_3(b - a) = {(b - a).valuation()} "
      f"(b - a = 27)\n")

# Teichmuller lifting: the unique (p-1)-st root of unity over each
# nonzero first digit, found as the Frobenius fixed point.
w = teichmuller(2, p, N)
print(f"teichmuller(2) = {w.residue}")
print(f"  check: w^2 = {pow(w.residue, 2, p**N)} (the (p-1)-st power is 1)")
print(f"  check: w = 2 mod 3 -> {w.residue % 3 == 2}\n")

# The standard topological generator of Z_p^x: Teichmuller part times 1+p.
psi = psi_generator(p, N)
print(f"psi = teichmuller(2) * (1 + {p}) = {psi.residue}")
one = psi**0
for k in (1, 2, 4, 6, 18):
    v = (one - psi**k).valuation()
    print(f"  v_3(1 - psi^{k}) = {v}")
print("The valuation jumps exactly on (p-1) | k, by 1 + v_p(k): this")
print("single pattern drives every torsion exponent downstream.\n")

# Binomial coefficients of a p-adic argument lose v_p(i!) digits.
c = binom(PadicInt(14, p, N), 4)
print(f"binom(14, 4) = {c.residue} at precision {c.precision} "
      f"(started at {N}, v_3(4!) = 1)")
