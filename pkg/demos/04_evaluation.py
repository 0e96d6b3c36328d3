#!/usr/bin/env python3
"""Score a generator over the built-in prompt suite.

Run: python demos/04_evaluation.py (a couple of minutes at these sizes)
"""

from textplan import (
    BaselineGenerator,
    PROMPT_SUITE,
    parse_layout,
    serialize_layout,
    spatial_diversity,
    top_diverse,
)
from textplan.genclient import SamplingParams
from textplan.pipeline import reference_from_generator, run_eval

# Reference statistics normally come from a dataset build
# (`textplan synth`); compute a small one on the fly here.
ref = reference_from_generator(per_category=15, seed=0)
print("reference mean histogram (bathroom, bedroom, corridor, kitchen, living_room):")
print("  ", [f"{float(m):.3f}" for m in ref.mean])

report = run_eval(BaselineGenerator(seed=4), PROMPT_SUITE, samples_per_prompt=5, ref=ref)
print("\nper-category roll-up:")
print(f"{'cat':>4} {'n':>5} {'valid':>6} {'correct':>8} {'ood':>6} {'w_in':>7} {'w_out':>7}")
for row in report.category_results:
    fmt = lambda v: "  -  " if v is None else f"{float(v):.3f}"
    print(
        f"{row.id:>4} {row.n_samples:>5} {fmt(row.validity_rate):>6} "
        f"{fmt(row.correctness_rate):>8} {fmt(row.ood_ratio):>6} "
        f"{fmt(row.wasserstein_in):>7} {fmt(row.wasserstein_out):>7}"
    )

# Pick the most spatially diverse layouts for one prompt, the gallery view.
gen = BaselineGenerator(seed=11)
texts = gen.generate("a house with six rooms", SamplingParams(n=10))
layouts = [parse_layout(t) for t in texts]
print("\nmost diverse 'six rooms' layouts of 10 sampled:")
for layout in top_diverse(layouts, 2, ref):
    print(f"  w={float(spatial_diversity(layout, ref)):.3f}  {serialize_layout(layout)[:80]}...")
