"""Probe: 8-PAM optima and timing."""
import time

from pampnc import (
    bit_error_profile,
    canonical_form,
    distinct_bit_mappings,
    enumerate_symbol_classes,
    get_scenario,
    named_bit_labels,
    optimize_ber,
    optimize_ser,
    reference_mapping,
    ser_objective,
)


def canon_of(scenario, idx, coupling):
    return canonical_form(reference_mapping(scenario, idx).assign, coupling)


# --- uniform 8
scen = get_scenario("uniform8")
t0 = time.time()
classes = enumerate_symbol_classes(8, "additive", model=scen.model(10.0))
print(f"uniform8 classes with verification: {len(classes)} in {time.time()-t0:.2f}s")
bitmaps = distinct_bit_mappings(8, "additive")
gray8 = bit_error_profile(named_bit_labels(8, "gray"), "additive")
for snr in (10.0, 15.0):
    t0 = time.time()
    res = optimize_ber(scen.model(snr), classes, bitmaps)
    dt = time.time() - t0
    best_canons = {canonical_form(t.mapping.assign, "additive") for t in res.ties}
    m1 = canon_of("uniform8", 1, "additive") in best_canons
    bm_gray = any(t.bitmap.profile == gray8 for t in res.ties)
    pair = any(canonical_form(t.mapping.assign, "additive") == canon_of("uniform8", 1, "additive")
               and t.bitmap.profile == gray8 for t in res.ties)
    print(f"  snr={snr}: (map1,gray) optimal={pair} nties={len(res.ties)} "
          f"evaluated={res.evaluated} in {dt:.2f}s")
model10 = scen.model(10.0)
o1 = ser_objective(reference_mapping("uniform8", 1), model10)
o2 = ser_objective(reference_mapping("uniform8", 2), model10)
print(f"  ser objective m1={o1:.6f} m2={o2:.6f} m1<m2: {o1 < o2}")
res_ser = optimize_ser(model10, classes)
print(f"  SER optimum at 10dB is m1 class: "
      f"{canon_of('uniform8', 1, 'additive') in {canonical_form(t.mapping.assign, 'additive') for t in res_ser.ties}}")

# --- nonuniform 8
scen = get_scenario("nonuniform8")
t0 = time.time()
classes = enumerate_symbol_classes(8, "xor", model=scen.model(0.0))
print(f"nonuniform8 classes with verification: {len(classes)} in {time.time()-t0:.2f}s")
bitmaps = distinct_bit_mappings(8, "xor")
binary8 = bit_error_profile(named_bit_labels(8, "binary"), "xor")
for snr, want in ((15.0, 6), (10.0, 7), (5.0, 7), (0.0, 8), (-5.0, 9)):
    t0 = time.time()
    res = optimize_ber(scen.model(snr), classes, bitmaps)
    dt = time.time() - t0
    pair = any(canonical_form(t.mapping.assign, "xor") == canon_of("nonuniform8", want, "xor")
               and t.bitmap.profile == binary8 for t in res.ties)
    # which reference mappings are in the tie set at all?
    in_ties = [idx for idx in range(1, 10)
               if any(canonical_form(t.mapping.assign, "xor") == canon_of("nonuniform8", idx, "xor")
                      for t in res.ties)]
    all_binary = all(t.bitmap.profile == binary8 for t in res.ties)
    print(f"  snr={snr:+.0f}: want map{want}+binary in ties={pair} | ref maps in ties: {in_ties} "
          f"all-binary={all_binary} nties={len(res.ties)} in {dt:.2f}s")
