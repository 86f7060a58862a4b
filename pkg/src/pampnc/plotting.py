"""Render sweep reports as error-rate curves saved next to the delimited output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_RATE_LABEL = {"ser": "symbol error rate", "ber": "bit error rate"}


def _series_label(record) -> str:
    mapping = str(record.get("mapping_id", "?"))
    bitmap = record.get("bitmap_id")
    return f"mapping {mapping}" + (f" + {bitmap}" if bitmap else "")


def save_sweep_figure(records, criterion: str, path: str, title: str | None = None) -> str:
    """Plot analytic curves (and empirical markers, when present) from sweep records.

    ``records`` are the flat dictionaries emitted by the sweep report; one
    line is drawn per (mapping_id, bitmap_id) pair.
    """
    rate_key = f"{criterion}_analytic"
    emp_key = f"{criterion}_empirical"
    err_key = f"{criterion}_stderr"

    series: dict[str, list[dict]] = {}
    for rec in records:
        series.setdefault(_series_label(rec), []).append(rec)

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for label, recs in series.items():
        recs = sorted(recs, key=lambda r: r["snr_db"])
        snrs = [r["snr_db"] for r in recs]
        style = {"linestyle": "--", "linewidth": 2.5, "alpha": 0.8} if "optimal" in label else {}
        ax.semilogy(snrs, [r[rate_key] for r in recs], label=label, **style)
        empirical = [(r["snr_db"], r[emp_key], r.get(err_key, 0.0))
                     for r in recs if r.get(emp_key) not in (None, "") and r.get(emp_key, 0) > 0]
        if empirical:
            xs, ys, es = zip(*empirical)
            ax.errorbar(xs, ys, yerr=es, fmt="o", markersize=4, capsize=2,
                        color=ax.lines[-1].get_color())
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel(_RATE_LABEL.get(criterion, criterion))
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
