from .analysis import (
    Classification,
    a_value,
    band_word,
    boundary_quiddity,
    classify,
    pq_string,
    quasi_simple_digraph,
    strip_peripheral,
)
from .generator import (
    GeneratorParams,
    TriangulationGenerator,
    random_polygon_diagonals,
    random_triangulation,
)
from .triangulation import (
    DiskTriangulation,
    ValidationReport,
    add_ear,
    ensure_valid,
    rotate_labels,
    swap_punctures,
    validate,
)
