"""A free symmetric pair in the group ring of the Heisenberg group, step by step.

Type III involution with ζ = 1: x* = x, y* = y^-1, λ* = λ.
"""

from freepairs.algebras import cayley, quat_reg_rep
from freepairs.freeness import certify, sample_words, verify_certificate
from freepairs.heisenberg import GroupRingElem, InvolutionSpec, X, Y, specialize_quat
from freepairs.places import named_place

print("== 1. the involution ==")
star = InvolutionSpec("III", 0)
print("   x* =", star.x_star, "  y* =", star.y_star, "  λ* =", star.lambda_star)

print("== 2. a symmetric element and an anti-symmetric one ==")
u = 1 + GroupRingElem.of(X)
xy5 = GroupRingElem.of(X * Y**5)
r = xy5 - star.apply(xy5)
print("   u =", u, "  u* == u:", star.apply(u) == u)
print("   r =", r, "  r* == -r:", star.apply(r) == -r)

print("== 3. into the quaternions (x -> i, y -> j, λ -> -1) ==")
U, R = specialize_quat("PSI", u), specialize_quat("PSI", r)
V = cayley(R)
print("   ψ(u) =", U)
print("   ψ(r) =", R)
print("   v = (1-ψ(r))(1+ψ(r))^-1 =", V)

print("== 4. matrices over F(i) and the place above 1-a ==")
A, B = quat_reg_rep(U, "L"), quat_reg_rep(V, "L")
print("   A =", A)
pl = named_place("P(1+i)")
cert = certify(A, B, pl)
print("   certificate:", cert.verdict, "eigen valuations", cert.eigen_valuations)
print("   B valuations", cert.B_valuations, "  B^-1 valuations", cert.Binv_valuations)
print("   Hensel re-check problems:", verify_certificate(cert, A, B, pl) or "none")

print("== 5. words in {A, B^-1 A B} ==")
report = sample_words(A, B.inverse() * A * B, max_len=8, count=200, seed=1)
print("   200 reduced words, identities found:", len(report.failures))
