"""Probe: counts, equivalence classes, optima, crossovers."""
import time

import numpy as np

from pampnc import (
    Candidate,
    canonical_form,
    distinct_bit_mappings,
    enumerate_symbol_classes,
    find_crossover,
    get_scenario,
    make_bit_mapping,
    named_bit_labels,
    optimize_ber,
    optimize_ser,
    reference_mapping,
    bit_error_profile,
)

t0 = time.time()
for order, coupling, want in ((4, "additive", 2), (4, "xor", 3), (8, "additive", 46), (8, "xor", 175)):
    reps = distinct_bit_mappings(order, coupling)
    print(f"distinct bitmaps order={order} coupling={coupling}: {len(reps)} (want {want})")
print(f"  bitmap enumeration took {time.time()-t0:.2f}s")

t0 = time.time()
for order, coupling, want in ((4, "additive", 6), (4, "xor", 12), (8, "additive", 10080), (8, "xor", 20160)):
    classes = enumerate_symbol_classes(order, coupling)
    print(f"classes order={order} coupling={coupling}: {len(classes)} (want {want})")
print(f"  class enumeration took {time.time()-t0:.2f}s")

# profiles
print("gray4 additive:", bit_error_profile(named_bit_labels(4, "gray"), "additive"))
print("binary4 additive:", bit_error_profile(named_bit_labels(4, "binary"), "additive"))
print("gray4 xor:", bit_error_profile(named_bit_labels(4, "gray"), "xor"))
print("binary4 xor:", bit_error_profile(named_bit_labels(4, "binary"), "xor"))
print("third4 xor:", bit_error_profile(named_bit_labels(4, "third"), "xor"))


def canon_of(scenario, idx):
    scen = get_scenario(scenario)
    return canonical_form(reference_mapping(scenario, idx).assign, scen.coupling)


def best_classes(result, coupling):
    return {canonical_form(tie.mapping.assign, coupling) for tie in result.ties}


# --- uniform4 SER optimum vs SNR
scen = get_scenario("uniform4")
classes4 = enumerate_symbol_classes(4, "additive")
print("\nuniform4 SER optimum per SNR:")
for snr in range(-10, 16):
    res = optimize_ser(scen.model(snr), classes4)
    tags = []
    for idx in (1, 2):
        if canon_of("uniform4", idx) in best_classes(res, "additive"):
            tags.append(str(idx))
    print(f"  snr={snr:+d}: obj={res.best.objective:.6e} matches mappings {tags} nties={len(res.ties)}")

bitmaps4 = distinct_bit_mappings(4, "additive")
print("uniform4 BER optimum per SNR:")
gray4 = bit_error_profile(named_bit_labels(4, "gray"), "additive")
for snr in range(-10, 16):
    res = optimize_ber(scen.model(snr), classes4, bitmaps4)
    tags = []
    for idx in (1, 2):
        if canon_of("uniform4", idx) in best_classes(res, "additive"):
            tags.append(str(idx))
    bm = "gray" if res.best.bitmap.profile == gray4 else str(res.best.bitmap.profile)
    print(f"  snr={snr:+d}: matches mappings {tags} bitmap={bm} nties={len(res.ties)}")

# crossovers
ma, bc, scheme = scen.components()
m1 = Candidate("1", reference_mapping("uniform4", 1))
m2 = Candidate("2", reference_mapping("uniform4", 2))
print("uniform4 SER crossover 1 vs 2:", find_crossover(ma, bc, scheme, "ser", m1, m2, -10, 0))
g = make_bit_mapping(named_bit_labels(4, "gray"), "additive")
c1 = Candidate("1+g", reference_mapping("uniform4", 1), g)
c2 = Candidate("2+g", reference_mapping("uniform4", 2), g)
print("uniform4 BER crossover (1,G) vs (2,G):", find_crossover(ma, bc, scheme, "ber", c1, c2, -10, 0))

# --- nonuniform4
scen = get_scenario("nonuniform4")
ma, bc, scheme = scen.components()
classes4x = enumerate_symbol_classes(4, "xor")
m1 = Candidate("1", reference_mapping("nonuniform4", 1))
m2 = Candidate("2", reference_mapping("nonuniform4", 2))
print("\nnonuniform4 SER crossover 1 vs 2:", find_crossover(ma, bc, scheme, "ser", m1, m2, 0, 8))
bitmaps4x = distinct_bit_mappings(4, "xor")
binary4x = bit_error_profile(named_bit_labels(4, "binary"), "xor")
print("nonuniform4 BER optimum per SNR:")
for snr in (-10, -5, 0, 5, 10, 15):
    res = optimize_ber(scen.model(snr), classes4x, bitmaps4x)
    m3_in = canon_of("nonuniform4", 3) in best_classes(res, "xor")
    bm_binary = any(t.bitmap.profile == binary4x for t in res.ties)
    pair_in = any(
        canonical_form(t.mapping.assign, "xor") == canon_of("nonuniform4", 3)
        and t.bitmap.profile == binary4x for t in res.ties
    )
    print(f"  snr={snr:+d}: (map3,binary) in ties: {pair_in} (m3 {m3_in}, binary {bm_binary}) nties={len(res.ties)}")
