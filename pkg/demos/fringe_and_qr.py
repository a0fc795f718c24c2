"""Fringe presentations and QR codes: describing a module by births, deaths and scalars."""

from persistence_kernel import catalog
from persistence_kernel.fringe import fringe_to_module, hom_dim, module_to_fringe
from persistence_kernel.qr import BirthDegree, elder_morphism, elder_quotient, qr_code, recover
from persistence_kernel.serialization import face_to_json, matrix_to_json

upset, downset = catalog.disconnected_hom_pair()
print("dim Hom(k[U], k[D]) for U = N^2 minus the origin, D = {(1,0), (0,1)} and below:", hom_dim(upset, downset))

m = catalog.elder_module()
mm = module_to_fringe(m)
print(f"fringe presentation: {len(mm.rows)} birth upsets, {len(mm.cols)} death downsets")
for u in mm.rows:
    print("  birth", u)
for d in mm.cols:
    print("  death", d)
back = fringe_to_module(mm, m.box)
print("image of the presentation matches the module:", back.dims == m.dims)

qr = qr_code(m)
print("births:", [(face_to_json(b.face), b.coset) for b in qr.births])
print("deaths:", [(face_to_json(a.face), a.coset) for a in qr.deaths])
for (b, a), block in sorted(qr.blocks.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key())):
    if not block.is_zero():
        print(f"  block {b.coset} -> {face_to_json(a.face)}:{a.coset} = {matrix_to_json(block)}")
print("recovered module matches:", recover(qr, m.box).dims == m.dims)

beta = BirthDegree([], (1, 1))
quo = elder_quotient(m, beta)
print("elder quotient at (1,1) lives at", [p for p, d in quo.dims.items() if d])
print("elder morphism:", matrix_to_json(elder_morphism(m, beta).matrix()))
