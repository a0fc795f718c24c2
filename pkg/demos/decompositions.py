"""Primary decomposition of downsets of Z^2 and of a small module."""

from persistence_kernel import catalog
from persistence_kernel.decomposition import (
    associated_faces,
    canonical_decomposition,
    irreducible_decomposition,
    minimal_decomposition,
    primary_decomposition_module,
)
from persistence_kernel.lattice import DownsetZn, LatticeBox
from persistence_kernel.znmodule import FdModule, direct_sum


def faces(fs):
    return ["{" + ",".join(str(i + 1) for i in sorted(f)) + "}" for f in fs]


for label, d in [
    ("corner plus strip", catalog.two_component_downset()),
    ("staircase", catalog.staircase_downset()),
    ("three corners", catalog.three_corner_downset()),
]:
    print(f"== {label}: {d}")
    print("  associated faces:", faces(associated_faces(d)))
    for c in canonical_decomposition(d):
        print("  canonical component along", faces([c.face])[0], "->", c.downset)
    for c in minimal_decomposition(d):
        print("  minimal component along", faces([c.face])[0], "->", c.downset)
    print("  irreducible pieces:", len(irreducible_decomposition(d)))

box = LatticeBox((-1, -1), (1, 1))
m = direct_sum(FdModule.indicator([(0, 0)], box), FdModule.from_downset(DownsetZn(2, [((0, 0), [0])]), box))
print("== skyscraper plus the half plane y <= 0")
for comp in primary_decomposition_module(m):
    dims = {p: d for p, d in comp.quotient.dims.items() if d}
    print("  quotient along", faces([comp.face])[0], "has support", sorted(dims))
