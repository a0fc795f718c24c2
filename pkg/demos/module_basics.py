"""Tour of a finitely determined Z^2-module: dimensions, ranks, duality, socles and tops.

The module has generators e_x, e_y, e_xy in degrees (1,0), (0,1), (1,1) and
two relations that make e_xy merge with e_x when pushed along x and with
e_y when pushed along y.
"""

from persistence_kernel import catalog
from persistence_kernel.lattice import all_faces
from persistence_kernel.znmodule import closed_socle_along, matlis_dual, quotient_restriction, top_along


def show(label, m):
    pts = {p: d for p, d in m.dims.items() if d}
    print(f"{label}: {pts}")


m = catalog.elder_module()
print("Hilbert function on the box (rows are y from top to bottom):")
for y in range(m.box.hi[1], m.box.lo[1] - 1, -1):
    print("  " + " ".join(str(m.dim((x, y))) for x in range(m.box.lo[0], m.box.hi[0] + 1)))

print("rank (1,1) -> (2,2):", m.rank_function((1, 1), (2, 2)))
print("rank (1,0) -> (3,3):", m.rank_function((1, 0), (3, 3)))

twice = matlis_dual(matlis_dual(m))
print("dual of the dual has the same dimensions:", twice.dims == m.dims)

for f in all_faces(2):
    name = "{" + ",".join(str(i + 1) for i in sorted(f)) + "}"
    show(f"top along {name}", top_along(m, f))
    show(f"socle along {name}", closed_socle_along(m, f))

show("slice far out along x", quotient_restriction(m, frozenset({0})))
