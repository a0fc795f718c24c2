"""Finite encodings: collapse the box onto a small poset without losing the module."""

from persistence_kernel import catalog
from persistence_kernel.encoding import encode
from persistence_kernel.posets import isotypic_regions

for label, m in [("skyscraper plus constant", catalog.isotypic_fixture()), ("three generator module", catalog.elder_module())]:
    enc = encode(m)
    print(f"== {label}")
    print("  isotypic regions:", len(isotypic_regions(m)))
    print("  encoding poset size:", enc.poset.size, "(refined by fringe labels)" if enc.refined else "")
    print("  cover relations:", list(enc.poset.covers))
    print("  pullback reproduces the dimensions:", enc.pullback().dims == m.dims)
