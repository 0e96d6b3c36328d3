#!/usr/bin/env python3
"""Generate synthetic floor plans and render them to SVG.

Run: python demos/02_synthetic_generation.py (writes demos/out/*.svg)
"""

from pathlib import Path

from textplan import (
    CategoryKey,
    adjacency_graph,
    category_of,
    generate_layout,
    render_svg,
    sample_spec,
    serialize_layout,
    validate,
)

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

# A spec bundles the room roster with target areas, a connectivity graph
# to realize as shared walls, an entrance side, and the seed.
spec = sample_spec(CategoryKey(2, 1), rng_seed=7)
print("rooms:", [(k.value, a) for k, a in spec.rooms])
print("connectivity:", spec.connectivity, " entrance:", spec.entrance_side.name)

layout = generate_layout(spec)
print("\nvalid:", validate(layout).valid, "  category:", category_of(layout).label)
print("every requested edge became a wall:")
graph = adjacency_graph(layout)
for a, b, length in graph.edges:
    mark = "*" if (a, b) in spec.connectivity else " "
    print(f"  {mark} {layout.rooms[a].kind.value:<11} - {layout.rooms[b].kind.value:<11} ({length} units)")

print("\nas text:", serialize_layout(layout)[:100], "...")

# Same seed, same plan; new seeds, new plans.
for i, seed in enumerate([7, 7, 8, 9]):
    plan = generate_layout(sample_spec(CategoryKey(2, 1), rng_seed=seed))
    path = out_dir / f"plan-{i}-seed{seed}.svg"
    path.write_text(render_svg(plan))
    print("wrote", path)
