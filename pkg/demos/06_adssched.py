"""Scheduling with per-client cool-downs and per-slot capacity.

k clients, n time slots.  A client may repeat only after omega-1 slots of
rest, each slot serves at most l clients, and only available (client, slot)
pairs may be picked.  Clients do not constrain each other beyond the shared
capacity, so the column DP runs with a relaxed window set: one entry per
client row, at most l entries per column.
"""

from losnet import (
    AdsInstance,
    brute_adssched,
    parse_ads,
    serialize_ads,
    solve_adssched,
    verify_ads,
)

ads = AdsInstance(
    k_clients=3,
    n_times=6,
    omega=3,
    l=1,
    available=(
        (1, 1, 0, 1, 1, 1),
        (1, 0, 1, 1, 0, 1),
        (0, 1, 1, 0, 1, 1),
    ),
)

print(".ads file:")
print(serialize_ads(ads))
assert parse_ads(serialize_ads(ads)) == ads

sol = solve_adssched(ads)
print("optimal airings:", sol.total_weight)
for client, slot in sol.vertices:
    print(f"  client {client} airs at slot {slot}")

ref = brute_adssched(ads)
assert sol.total_weight == ref.total_weight
print("matches the exhaustive oracle:", ref.total_weight)

report = verify_ads(ads, sol)
print("structurally feasible:", report.independent)

# capacity really binds: two clients, one slot each turn
tight = AdsInstance(2, 6, 2, 1, ((1,) * 6, (1,) * 6))
print("\ntwo always-available clients, l=1, omega=2:",
      solve_adssched(tight).total_weight, "airings over 6 slots")
