"""CLI invocations frozen as golden files: name -> (argv, expected exit code).

Paths are relative to the repository root; the tests run the CLI from there.
"""

CASES = {
    "compute_line": (["compute", "--example", "line", "--coeff", "Z", "--degrees", "0..2"], 0),
    "compute_triangle_z3": (["compute", "--example", "compact_triangle", "--coeff", "Z/3", "--degrees", "0..1"], 0),
    "compute_plane_cohomology": (["compute", "--example", "plane", "--cohomology", "--degrees", "1..1"], 0),
    "compute_cylinder_both": (["compute", "--example", "cylinder", "--both"], 0),
    "compute_ray_rational": (["compute", "--example", "ray", "--coeff", "Q", "--both", "--degrees", "0..1"], 0),
    "compute_wedge_mixed": (["compute", "--example", "two_rays_wedge", "--coeff", "Z/2+Z", "--degrees", "0..1"], 0),
    "compute_point_file": (["compute", "--space", "data/point.space", "--both", "--degrees", "0..1"], 0),
    "compute_ray_file": (["compute", "--space", "data/ray9_tail.space", "--both", "--degrees", "0..1"], 0),
    "compute_short_horizon": (["compute", "--space", "data/plane2_upper.space", "--degrees", "0..1"], 2),
    "compute_text_format": (["compute", "--example", "ray", "--format", "text", "--degrees", "0..0"], 0),
    "audit_exactness_cylinder": (["audit", "--suite", "exactness", "--example", "cylinder", "--seed", "7"], 0),
    "audit_functoriality": (["audit", "--suite", "functoriality", "--seed", "1"], 0),
    "audit_excision_line": (["audit", "--suite", "excision", "--example", "line", "--degrees", "0..1"], 0),
    "audit_compact": (["audit", "--suite", "compact"], 0),
    "audit_triple": (["audit", "--suite", "triple"], 0),
    "audit_naturality": (["audit", "--suite", "naturality"], 0),
    "invariants_cylinder": (["invariants", "--example", "cylinder", "--coeff", "Z"], 0),
    "invariants_triangle": (["invariants", "--example", "compact_triangle"], 0),
    "invariants_line_family": (["invariants", "--example", "line", "--family", "data/line_left_ray.txt"], 0),
}
