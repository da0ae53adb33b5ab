"""Walk through the named algebras: what they satisfy and where they break."""

from pbzlat import build, check_identity, classify
from pbzlat.algebra import sharp_sets
from pbzlat.catalog import names

# one line per catalog algebra
for name in names():
    A = build(name)
    r = classify(A)
    classes = [c for c in ("OL", "OML", "PBZSTAR", "AOL") if r[c]]
    print(f"{name:<9} n={A.size:<3} {','.join(classes):<16} "
          + " ".join(k for k, ok in r.identities.items() if ok))

# D4 fails SK; the checker reports the smallest failing assignment
D4 = build("D4")
res = check_identity(D4, "SK")
w = res.witness
print("\nSK in D4:", res.holds, {k: D4.label(v) for k, v in w.assignment.items()},
      "lhs", D4.label(w.lhs), "rhs", D4.label(w.rhs))

# M3B: SK and J2 hold, WSDM does not
M = build("M3B")
for ident in ("SK", "J2", "WSDM"):
    print(f"M3B {ident}:", check_identity(M, ident).holds)

# in a PBZ*-lattice the three kinds of sharp elements coincide
H = build("H16")
s_k, s_d, s_b = sharp_sets(H)
print("\nH16 sharp elements:", [H.label(x) for x in s_k], s_k == s_d == s_b)
