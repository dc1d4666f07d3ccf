"""Named experiment catalog: one configuration per published figure panel,
so every run is reproducible by name.

Window lengths that the captions leave open default to 10000 time units
(the longest window stated in the text); fractional initial occupations
use half-up rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .dynamics import SimulationConfig


@dataclass(frozen=True)
class Preset:
    name: str
    config: SimulationConfig
    note: str


def _build_catalog() -> dict[str, Preset]:
    cat: dict[str, Preset] = {}

    def add(name, note, **kw):
        cat[name] = Preset(name, SimulationConfig(**kw), note)

    def alias(name, target, note):
        cat[name] = Preset(name, cat[target].config, note)

    # collective oscillations, bare dynamics: N=40, g0=2, depression pinned
    for gtag, gamma in (("gamma1", 1.0), ("gamma09", 0.9)):
        for pct in (100, 80, 60, 53):
            add(
                f"fig1-{gtag}-f{pct}",
                f"collective oscillations, anisotropy {gamma}, {pct}% excited start",
                N=40, gamma=gamma, g0=2.0, tau_r=0.0, tau_f=0.0,
                U_base=0.5, r0=1.0, initial_fraction=pct / 100.0, t_max=10000.0,
            )

    # homeostatic depression runs: gamma=1, g0=0.05, tau_r=1, U pinned at 0.5
    for N, t_max in ((10, 4000.0), (80, 10000.0)):
        for tag, n0 in (("half", N // 2 - 1), ("none", 0), ("all", N)):
            add(
                f"fig2-N{N}-{tag}",
                f"depression feedback, N={N}, start {tag} ({n0} excited)",
                N=N, gamma=1.0, g0=0.05, tau_r=1.0, tau_f=0.0,
                U_base=0.5, r0=1.0, initial_count=n0, t_max=t_max,
            )

    # fidelity / block-entropy panels reuse the N=80 depression runs
    alias("fig-fidelity-ordered", "fig2-N80-all",
          "fidelity revivals, ordered (all-excited) start")
    alias("fig-fidelity-half", "fig2-N80-half",
          "fidelity, near-half-excited start")
    alias("fig-entropy-ordered", "fig2-N80-all",
          "block entropy from zero, ordered start")
    alias("fig-entropy-half", "fig2-N80-half",
          "block entropy staying high, near-half-excited start")

    # depression-strength sweep: N=20, g0=0.5, gamma=0.8, U pinned at 0.5
    for tau_r in (0.1, 10.0, 20.0):
        ttag = f"tau{tau_r:g}"
        for tag, n0 in (("silent", 0), ("half", 9), ("allup", 20)):
            add(
                f"fig4-{ttag}-{tag}",
                f"depression sweep, tau_r={tau_r:g}, start {tag}",
                N=20, gamma=0.8, g0=0.5, tau_r=tau_r, tau_f=0.0,
                U_base=0.5, r0=1.0, initial_count=n0, t_max=10000.0,
            )

    # entropy distribution / spectra panels: three depression levels
    for tag, tau_r in (("low", 0.1), ("mid", 10.0), ("high", 20.0)):
        alias(f"fig5-depression-{tag}", f"fig4-tau{tau_r:g}-silent",
              f"block-entropy statistics at tau_r={tau_r:g}")

    # facilitation sweep: sizes with coupling rescaled to a common time scale
    for N, g0 in ((2, 0.125), (10, 1.43), (20, 30.0)):
        for tau_f in (1.0, 10.0, 100.0, 1000.0):
            add(
                f"fig6-N{N}-tauf{tau_f:g}",
                f"facilitation, N={N}, g0={g0:g}, tau_f={tau_f:g}",
                N=N, gamma=0.8, g0=g0, tau_r=100.0, tau_f=tau_f,
                U_base=0.02, r0=1.0, initial_count=0, t_max=10000.0,
            )

    return cat


CATALOG: dict[str, Preset] = _build_catalog()

# figure panel -> preset names covering it (completeness checked in tests)
PANELS: dict[str, list[str]] = {
    "fig1-A": [f"fig1-gamma1-f{p}" for p in (100, 80, 60, 53)],
    "fig1-B": [f"fig1-gamma09-f{p}" for p in (100, 80, 60, 53)],
    "fig2-left": ["fig2-N10-half"],
    "fig2-right": ["fig2-N80-half"],
    "fig3-left": ["fig2-N10-none"],
    "fig3-right": ["fig2-N80-none"],
    "fig3b-left": ["fig2-N10-all"],
    "fig3b-right": ["fig2-N80-all"],
    "fidelity-left": ["fig-fidelity-ordered"],
    "fidelity-right": ["fig-fidelity-half"],
    "entropy-left": ["fig-entropy-ordered"],
    "entropy-right": ["fig-entropy-half"],
    "fig4-A": [f"fig4-tau{t:g}-silent" for t in (0.1, 10.0, 20.0)],
    "fig4-B": [f"fig4-tau{t:g}-half" for t in (0.1, 10.0, 20.0)],
    "fig4-C": [f"fig4-tau{t:g}-allup" for t in (0.1, 10.0, 20.0)],
    "fig5-timeseries": [f"fig5-depression-{t}" for t in ("low", "mid", "high")],
    "fig5-histogram": [f"fig5-depression-{t}" for t in ("low", "mid", "high")],
    "fig5-spectrum": [f"fig5-depression-{t}" for t in ("low", "mid", "high")],
    "fig6-A": [f"fig6-N2-tauf{t:g}" for t in (1.0, 10.0, 100.0, 1000.0)],
    "fig6-B": [f"fig6-N10-tauf{t:g}" for t in (1.0, 10.0, 100.0, 1000.0)],
    "fig6-C": [f"fig6-N20-tauf{t:g}" for t in (1.0, 10.0, 100.0, 1000.0)],
}


def preset(name: str) -> SimulationConfig:
    """Fully resolved configuration for a catalog entry (a fresh copy)."""
    if name not in CATALOG:
        known = ", ".join(sorted(CATALOG))
        raise KeyError(f"unknown preset {name!r}; available: {known}")
    return replace(CATALOG[name].config)


def preset_names() -> list[str]:
    return sorted(CATALOG)
