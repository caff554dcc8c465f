"""RM points, twisted cycles, and the two intersection algorithms.

For F = Q(sqrt(6)) and p = 5 we build the psi-twisted cycle of closed
geodesics and intersect each Hecke translate with the winding geodesic
(the image of the imaginary axis in Y0(p)), using two algorithms that
share nothing but the exact arithmetic layer:

  cycle  - walk the reduction cycle of the form class and count
           straddling forms, transported by powers of the automorph;
  enum   - follow the Farey cutting sequence of the geodesic between a
           base point and its automorph image.
"""

from rqgeo import (
    build_field,
    choose_r,
    hecke_translate,
    intersect_winding_cycle,
    intersect_winding_enum,
    narrow_class_group,
    odd_characters,
    twisted_cycle,
)

D, p = 6, 5
F = build_field(D)
G = narrow_class_group(F)
psi = odd_characters(G)[0]
rc = choose_r(F, p)
print("d_F = %d, p = %d, chosen square root r = %d (r^2 = d_F mod 4p)"
      % (F.d_F, p, rc.r))

cyc = twisted_cycle(F, G, psi, p, rc)
print("\ntwisted cycle: %d closed geodesics (one +r and one -r per class)"
      % len(cyc.terms))
for coeff, Q in cyc.terms:
    print("  coeff %+d   form %s   orientation %+d"
          % (coeff, tuple(Q.form), Q.orientation))

print("\nper-translate intersection numbers, both algorithms:")
for n in (1, 2, 3, 4):
    total = 0
    rows = []
    for coeff, Q in cyc.terms:
        for t in hecke_translate(Q, n, check_stabilizer=False):
            a = intersect_winding_cycle(t)
            b = intersect_winding_enum(t)
            assert a == b
            rows.append((tuple(t.form), a))
            total += coeff * a
    print("  n = %d: pairing %d from %d translates %s"
          % (n, total, len(rows), rows if n == 1 else "..."))
print("\nevery pairing is even (both square roots trace the same locus)")
print("and the series coefficient is a_n = -2 * pairing.")
