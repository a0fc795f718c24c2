"""One-parameter bar codes read off from tops, socles and the elder rule."""

import random

from persistence_kernel import catalog
from persistence_kernel.barcode import barcode_with_map, functorial_barcode, gr_soc_spaces, top_spaces
from persistence_kernel.generators import random_rmodule
from persistence_kernel.serialization import matrix_to_json


def ep(e):
    return "inf" if e.kind == "inf" else f"{e.value}{'*' if e.kind == 'closed' else 'o'}"


m = catalog.two_bar_module()
print("module:", m)
print("tops:", {ep(k): v for k, v in top_spaces(m).items()})
print("graded socles:", {f"{ep(a)} from {ep(b)}": v for (a, b), v in gr_soc_spaces(m).items()})
blocks, bars = barcode_with_map(m)
for bar in bars:
    print("bar", bar.ascii(), "x", bar.mult, "block", matrix_to_json(blocks[(bar.birth, bar.death)]))

rng = random.Random(7)
r = random_rmodule(rng, 3, 2)
print("random module:", r)
for bar in functorial_barcode(r):
    print("  ", bar.ascii(), "x", bar.mult)
