"""Instances, adjacency, and the .losn file format.

Vertices live on 1-based integer grid coordinates.  Two vertices are
adjacent when they differ in exactly one coordinate and the gap there is
strictly less than omega; a gap of exactly omega is already safe.
"""

from fractions import Fraction

from losnet import (
    GenConfig,
    InstanceParams,
    LosInstance,
    are_adjacent,
    generate,
    is_independent,
    parse_instance,
    serialize_instance,
    set_weight,
)

# A 2-d box, 8 cells long and 2 wide, with visibility range 3.
params = InstanceParams(d=2, extents=(8, 2), omega=3)
inst = LosInstance(
    params,
    {
        (1, 1): Fraction(2),
        (2, 2): Fraction(1),
        (4, 1): Fraction(5, 2),
        (8, 1): Fraction(1),
    },
)

print("vertices:", dict(inst.vertices))
print("(1,1) vs (2,2): no shared axis line ->", are_adjacent((1, 1), (2, 2), 3))
print("(1,1) vs (4,1): gap 3, not < 3      ->", are_adjacent((1, 1), (4, 1), 3))
print("(4,1) vs (8,1): gap 4               ->", are_adjacent((4, 1), (8, 1), 3))

chosen = [(1, 1), (4, 1), (8, 1)]
print("independent:", is_independent(inst, chosen), "| weight:", set_weight(inst, chosen))

# Everything serializes to a line-oriented text format, sorted and exact.
text = serialize_instance(inst)
print("\n.losn file:")
print(text)
assert parse_instance(text) == inst

# Random instances are a pure function of their config: same seed, same
# file, on every platform (the generator is splitmix64).
cfg = GenConfig(
    InstanceParams(2, (10, 3), 3), density=Fraction(1, 2),
    weight_dist="uniform:1:5", seed=42,
)
a, b = generate(cfg), generate(cfg)
assert a == b
print(f"generated {len(a)} vertices, total weight {a.total_weight()}")
