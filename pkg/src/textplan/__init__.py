"""textplan: text-described residential floor plans.

Parse and serialize the layout text format, check geometric validity,
extract and verify natural-language annotations, generate synthetic
layouts and datasets, score generator output, and serve it all over HTTP.
"""

from .core import (
    GRID_MAX,
    TRAINING_CATEGORIES,
    CategoryKey,
    Layout,
    ParseError,
    Point,
    Room,
    RoomType,
    bounding_box,
    category_of,
    parse_layout,
    room_area,
    room_centroid,
    scale_to_bbox,
    serialize_layout,
)
from .genclient import (
    BaselineGenerator,
    EndpointClient,
    EndpointError,
    GeneratorEndpoint,
    SamplingParams,
    UnsatisfiableError,
    baseline_generate,
)
from .metrics import (
    ReferenceStats,
    SampleRecord,
    aggregate,
    area_histogram,
    is_ood,
    spatial_diversity,
    top_diverse,
    wasserstein_1d,
)
from .pipeline import EvalReport, build_dataset, run_eval, verify_dataset
from .prompts import PROMPT_SUITE, PromptEntry, suite_digest
from .semantics import (
    AdjacentTo,
    Annotation,
    CompassOctant,
    LocatedIn,
    NotAdjacentTo,
    PromptParseError,
    RoomCount,
    RoomMix,
    annotation_category,
    check_correctness,
    classify_octant,
    extract_annotations,
    parse_prompt,
    render_annotation,
)
from .service import create_app, render_svg
from .synthgen import (
    GenConfig,
    GenerationError,
    GenSpec,
    generate_layout,
    sample_spec,
)
from .validity import (
    AdjacencyGraph,
    ValidityReport,
    Violation,
    adjacency_graph,
    validate,
    validate_text,
)

__version__ = "0.1.0"
