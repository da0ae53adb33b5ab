"""Centre and interval decomposition of a product of antiortholattices."""

from pbzlat import build, center_boolean_algebra, commutation_report, decompose

P = build("D3xD2")
rep = commutation_report(P)
lab = P.label
print("S_K      ", [lab(x) for x in rep.s_k])
print("C_pbz    ", [lab(x) for x in rep.c_pbz])
print("C1-C4    ", [lab(x) for x in rep.c_conditions])
print("factor   ", [lab(x) for x in rep.c_factor])
print("centre has", center_boolean_algebra(P, rep).size, "elements")

# b -> (b ^ a~, b ^ ◇a) splits P into [0,a~] x [0,◇a]
d = decompose(P, "(0,1)")
print("\nL1 =", [lab(x) for x in d.first.elements])
print("L2 =", [lab(x) for x in d.second.elements])
for b, image in enumerate(d.phi):
    print(f"  {lab(b):>6} -> {d.product.label(image)}")
print("isomorphism verified:", d.verified)

# the same works for every element of a 9-element product
Q = build("D3xD3")
print("\nD3xD3, all elements:", all(decompose(Q, a).verified for a in range(Q.size)))
