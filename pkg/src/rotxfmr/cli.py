"""Command-line front end: ``rotxfmr <analyze|bode|sweep|gain>``.

Exit codes: 0 success, 2 input or validation error, 3 tolerance failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import __version__, analysis, circuits, mec, tables
from .circuits import CouplingParams, LoadImpedance
from .data import CONFIGS, data_path
from .errors import GeometryError, RotxfmrError
from .geometry import (
    MaterialSpec,
    TransformerGeometry,
    WindingSpec,
    derived_dimensions,
    validate_geometry,
)

EXIT_OK, EXIT_INPUT, EXIT_TOLERANCE = 0, 2, 3

UNIT_SCALE = {"mm": 1e-3, "m": 1.0}
GEOMETRY_KEYS = tuple(f.name for f in fields(TransformerGeometry))
TOP_KEYS = {"units", "geometry", "material", "winding", "coupling"}
MATERIAL_KEYS = {"mu_r"}
WINDING_KEYS = {"N_s", "N_r", "r_s", "r_r"}
COUPLING_KEYS = {"l_ss", "l_sr", "l_rr"}


class ConfigError(RotxfmrError, ValueError):
    pass


@dataclass
class RunConfig:
    units: str
    geometry: TransformerGeometry | None
    material: MaterialSpec
    winding: WindingSpec | None
    coupling: CouplingParams | None
    digest: str

    @property
    def scale(self):
        return UNIT_SCALE[self.units]

    def require_geometry(self):
        if self.geometry is None:
            raise ConfigError("this command needs a 'geometry' section")
        return self.geometry

    def require_winding(self):
        if self.winding is None:
            raise ConfigError("this command needs a 'winding' section")
        return self.winding


def _check_keys(section, data, allowed, required=()):
    if not isinstance(data, dict):
        raise ConfigError(f"'{section}' must be a JSON object")
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in '{section}': {', '.join(unknown)}")
    missing = [k for k in required if k not in data]
    if missing:
        raise ConfigError(f"missing key(s) in '{section}': {', '.join(missing)}")


def parse_config(raw):
    """Build a :class:`RunConfig` from decoded JSON."""
    _check_keys("config", raw, TOP_KEYS, required=("units",))
    units = raw["units"]
    if units not in UNIT_SCALE:
        raise ConfigError(f"units must be 'mm' or 'm', got {units!r}")
    scale = UNIT_SCALE[units]

    geom = None
    if "geometry" in raw:
        _check_keys("geometry", raw["geometry"], GEOMETRY_KEYS, required=GEOMETRY_KEYS)
        geom = TransformerGeometry(**{k: float(v) * scale for k, v in raw["geometry"].items()})
    material = MaterialSpec()
    if "material" in raw:
        _check_keys("material", raw["material"], MATERIAL_KEYS)
        material = MaterialSpec(**raw["material"])
    winding = None
    if "winding" in raw:
        _check_keys("winding", raw["winding"], WINDING_KEYS, required=("N_s", "N_r"))
        winding = WindingSpec(**raw["winding"])
    coupling = None
    if "coupling" in raw:
        c = raw["coupling"]
        _check_keys("coupling", c, COUPLING_KEYS, required=sorted(COUPLING_KEYS))
        r_s, r_r = (winding.r_s, winding.r_r) if winding else (0.0, 0.0)
        coupling = CouplingParams(l_ss=c["l_ss"], l_rr=c["l_rr"], m=c["l_sr"], r_s=r_s, r_r=r_r)
    if geom is None and coupling is None:
        raise ConfigError("config needs a 'geometry' or a 'coupling' section")

    canonical = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(canonical.encode()).hexdigest()[:16]
    return RunConfig(units, geom, material, winding, coupling, digest)


def load_config(spec):
    """Read a config file; ``builtin:<name>`` selects a bundled design."""
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name not in CONFIGS:
            raise ConfigError(f"unknown builtin config {name!r}; choose from {sorted(CONFIGS)}")
        text = data_path(CONFIGS[name]).read_text(encoding="utf-8")
    else:
        text = Path(spec).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return parse_config(raw)


def parse_load_spec(text):
    """``none`` | ``R=<ohms>`` | ``RL=<ohms>,<henries>``."""
    text = text.strip()
    if text.lower() == "none":
        return LoadImpedance.open_circuit()
    try:
        key, val = text.split("=", 1)
        if key == "R":
            return LoadImpedance.resistive(float(val))
        if key == "RL":
            r, l = val.split(",")
            return LoadImpedance.series_rl(float(r), float(l))
    except ValueError:
        pass
    raise ConfigError(f"malformed load spec {text!r}; use none, R=<ohms> or RL=<ohms>,<henries>")


def _provenance(command, cfg):
    return f"source: rotxfmr {command}, config sha256={cfg.digest}, version {__version__}"


def _out_path(prefix, suffix):
    path = Path(f"{prefix}_{suffix}.csv")
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _validated_geometry(cfg, g=None):
    geom = cfg.require_geometry()
    if g is not None:
        geom = geom.with_airgap(g)
    return validate_geometry(geom)


# -- commands -------------------------------------------------------------


def cmd_analyze(cfg, args):
    geom = _validated_geometry(cfg)
    winding = cfg.require_winding()
    d = derived_dimensions(geom)
    res = mec.mec_inductances(geom, winding, cfg.material)
    b = res.breakdown
    a = winding.turn_ratio
    model_i = circuits.coupling_from_mec(res.l_m, res.l_l, a, winding.r_s, winding.r_r)
    n_exact = circuits.exact_ratio(model_i)
    n_adj = circuits.adjusted_ratio(res.l_m, res.l_l, a)

    rows = [("h", d.h, "m"), ("r_f_o", d.r_f_o, "m"), ("r_f_i", d.r_f_i, "m")]
    rows += [(name, val, "1/H") for name, val in b.terms().items()]
    g = b.gap
    rows += [(name, getattr(g, name), "1/H")
             for name in ("R_g1", "R_g2", "R_go1", "R_gi1", "R_go2", "R_gi2")]
    rows += [
        ("R_core", b.core.total(), "1/H"),
        ("R_gap", g.R_geq1 + g.R_geq2, "1/H"),
        ("R_m", b.R_m, "1/H"),
        ("gap_share", b.gap_share, "1"),
        ("mu_r", cfg.material.mu_r, "1"),
        ("N_s", winding.N_s, "turns"),
        ("N_r", winding.N_r, "turns"),
        ("l_m", res.l_m, "H"),
        ("l_l", res.l_l, "H"),
        ("k", circuits.coupling_coefficient(model_i), "1"),
        ("n_turns", a, "1"),
        ("n_exact", n_exact, "1"),
        ("n_adjusted", n_adj, "1"),
    ]
    tables.write_csv(_out_path(args.out, "analyze"), ["quantity", "value", "unit"], rows,
                     [_provenance("analyze", cfg)])
    print(f"R_m        = {b.R_m:.6g} 1/H  (gap share {b.gap_share:.4f})")
    print(f"l_m        = {res.l_m:.6g} H")
    print(f"l_l        = {res.l_l:.6g} H")
    print(f"n turns    = {a:.6g}")
    print(f"n exact    = {n_exact:.6g}")
    print(f"n adjusted = {n_adj:.6g}")
    return EXIT_OK


def _bode_curves(cfg, args):
    winding = cfg.winding
    turn_ratio = args.turn_ratio or (winding.turn_ratio if winding else 1.0)
    if cfg.coupling is not None:
        model_i = cfg.coupling
        base = circuits.to_model_iii(model_i)
        iii = {
            "exact": base,
            "turns": base.with_ratio(turn_ratio),
            "adjusted": base.with_ratio(circuits.adjusted_ratio(base.l_m, base.l_l, turn_ratio)),
        }
    else:
        geom = _validated_geometry(cfg)
        w = cfg.require_winding()
        res = mec.mec_inductances(geom, w, cfg.material)
        model_i = circuits.coupling_from_mec(res.l_m, res.l_l, turn_ratio, w.r_s, w.r_r)
        adjusted = circuits.from_mec(res.l_m, res.l_l, w, turn_ratio)
        iii = {
            "exact": circuits.to_model_iii(model_i),
            "turns": adjusted.with_ratio(turn_ratio),
            "adjusted": adjusted,
        }
    curves = []
    for model in args.model:
        if model == "I":
            curves.append(("model_I", model_i))
        elif model == "II":
            curves.append(("model_II", circuits.to_model_ii(model_i)))
        else:
            curves.extend((f"model_III_{mode}", iii[mode]) for mode in args.ratio_mode)
    return curves


def cmd_bode(cfg, args):
    load = parse_load_spec(args.load)
    freqs = circuits.log_grid(args.f_min, args.f_max, args.n_points)
    responses = []
    for name, params in _bode_curves(cfg, args):
        resp = circuits.bode_sample(params, load, freqs, label=name)
        rows = zip(resp.freqs, resp.magnitude_db, resp.phase_deg)
        comments = [_provenance("bode", cfg), f"curve: {name}, load: {load.describe()}"]
        if resp.singular.any():
            comments.append(f"singular points: {int(resp.singular.sum())}")
        tables.write_csv(_out_path(args.out, name), ["freq_hz", "mag_db", "phase_deg"],
                         rows, comments)
        responses.append(resp)
        print(f"{name:<20} |H| at {resp.freqs[0]:.4g} Hz = {resp.magnitude_db[0]:.4f} dB")
    if len(responses) > 1 and args.n_points > 1:
        ref = responses[0]
        for other in responses[1:]:
            try:
                gap = circuits.flat_band_gap_db(other, ref)
            except ValueError:
                print(f"flat-band gap {other.label} - {ref.label}: no common flat band in range")
                continue
            print(f"flat-band gap {other.label} - {ref.label}: {gap:+.4f} dB")
    return EXIT_OK


SWEEP_COLUMNS = (("g_m", "g"), ("l_m_H", "l_m"), ("l_l_H", "l_l"),
                 ("n_adjusted", "n_adjusted"), ("gap_share", "gap_share"))


def cmd_sweep(cfg, args):
    geom = cfg.require_geometry()
    winding = cfg.require_winding()
    g_min, g_max = args.g_min * cfg.scale, args.g_max * cfg.scale
    if not 0 < g_min < g_max:
        raise ConfigError(f"need 0 < g_min < g_max, got {args.g_min}, {args.g_max}")
    spec = analysis.SweepSpec(g_min=g_min, g_max=g_max, n_points=args.n_points,
                              geometry=geom, winding=winding, material=cfg.material,
                              scale=args.scale)
    result = analysis.airgap_sweep(spec)
    comments = [_provenance("sweep", cfg)]
    comments += [f"skipped g_m={r.g!r}: {r.skipped}" for r in result.skipped_rows]
    header = [c for c, _ in SWEEP_COLUMNS]
    rows = [[getattr(r, attr) for _, attr in SWEEP_COLUMNS] for r in result.valid_rows]
    tables.write_csv(_out_path(args.out, "sweep"), header, rows, comments)
    print(f"{len(result.valid_rows)} airgaps evaluated, {len(result.skipped_rows)} skipped")
    for r in result.skipped_rows:
        print(f"  skipped g = {r.g:.6g} m: {r.skipped}")

    if not args.reference:
        return EXIT_OK
    refs = tables.read_reference_csv(args.reference)
    units = dict(tables.parse_column(c) for c, _ in SWEEP_COLUMNS[1:])
    reports = []
    for qty, ref in refs.items():
        if qty not in units:
            continue
        model = analysis.sweep_dataset(result, qty, units[qty])
        reports.append((qty, analysis.compare_reference(model, ref, args.tolerance)))
    if not reports:
        raise ConfigError(f"{args.reference} shares no quantity with the sweep")
    rows = [(qty, x, m, r, e) for qty, rep in reports
            for x, m, r, e in zip(rep.x, rep.model, rep.reference, rep.rel_error)]
    tables.write_csv(_out_path(args.out, "compare"),
                     ["quantity", "g_m", "model", "reference", "rel_error"], rows,
                     [_provenance("sweep", cfg), f"reference: {Path(args.reference).name}",
                      f"tolerance: {args.tolerance!r}"])
    ok = True
    for qty, rep in reports:
        verdict = "PASS" if rep.passed else "FAIL"
        ok &= rep.passed
        print(f"{verdict} {qty}: max rel error {rep.max_error:.4%}, mean {rep.mean_error:.4%} "
              f"(tolerance {args.tolerance:.2%})")
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_gain(cfg, args):
    load = parse_load_spec(args.load)
    geom = cfg.require_geometry()
    winding = cfg.require_winding()
    airgap = geom.g if args.airgap is None else args.airgap * cfg.scale
    validate_geometry(geom.with_airgap(airgap))
    study = analysis.GainStudy(v_exc=args.v_exc, f_exc=args.f_exc, load=load, airgap=airgap)
    res = analysis.predict_gain(study, geom, winding, cfg.material)
    p = res.params
    rows = [
        ("airgap", airgap, "m"), ("f_exc", args.f_exc, "Hz"),
        ("v_stator", res.v_stator, "V"), ("v_rotor", res.v_rotor, "V"),
        ("l_m", p.l_m, "H"), ("l_l", p.l_l, "H"), ("n", p.n, "1"),
        ("r_s", p.r_s, "ohm"), ("r_r", p.r_r, "ohm"),
    ]
    comments = [_provenance("gain", cfg), f"load: {load.describe()}"]
    tables.write_csv(_out_path(args.out, "gain"), ["quantity", "value", "unit"], rows, comments)
    sens = analysis.resistance_sensitivity(study, geom, winding, cfg.material)
    tables.write_csv(_out_path(args.out, "gain_sensitivity"), ["r_ohm", "v_rotor_V"],
                     [(r, g.v_rotor) for r, g in sens], comments)
    print(f"load {load.describe()}, airgap {airgap * 1e3:.4g} mm, "
          f"{args.v_exc:g} V @ {args.f_exc:g} Hz")
    print(f"v_stator = {res.v_stator:.4f} V, v_rotor = {res.v_rotor:.4f} V (n = {p.n:.4f})")
    print("winding resistance sensitivity (r_s = r_r):")
    for r, g in sens:
        print(f"  {r:>4g} ohm -> v_rotor = {g.v_rotor:.4f} V")
    return EXIT_OK


# -- argument parsing -----------------------------------------------------


def _csv_choice(choices):
    def parse(text):
        items = [t.strip() for t in text.split(",") if t.strip()]
        bad = [t for t in items if t not in choices]
        if bad or not items:
            raise argparse.ArgumentTypeError(f"choose from {', '.join(choices)}")
        return items
    return parse


def build_parser():
    parser = argparse.ArgumentParser(prog="rotxfmr", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True,
                       help="JSON config file, or builtin:small-size / builtin:large-size")
        p.add_argument("--out", required=True, help="output file prefix")

    p = sub.add_parser("analyze", help="reluctances, inductances and ratios of one design")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bode", help="frequency response of the circuit models")
    common(p)
    p.add_argument("--model", type=_csv_choice(("I", "II", "III")), default=["I", "II", "III"])
    p.add_argument("--ratio-mode", type=_csv_choice(("exact", "turns", "adjusted")),
                   default=["exact"], help="ratio(s) used for model III curves")
    p.add_argument("--turn-ratio", type=float, default=None, help="N_s/N_r override")
    p.add_argument("--load", default="R=10")
    p.add_argument("--f-min", type=float, default=10.0)
    p.add_argument("--f-max", type=float, default=1e6)
    p.add_argument("--n-points", type=int, default=200)
    p.set_defaults(func=cmd_bode)

    p = sub.add_parser("sweep", help="MEC inductances over an airgap range")
    common(p)
    p.add_argument("--g-min", type=float, required=True, help="in config units")
    p.add_argument("--g-max", type=float, required=True, help="in config units")
    p.add_argument("--n-points", type=int, default=19)
    p.add_argument("--scale", choices=("linear", "logarithmic"), default="linear")
    p.add_argument("--reference", help="reference CSV to compare against")
    p.add_argument("--tolerance", type=float, default=0.10)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gain", help="rotor voltage for a given excitation and load")
    common(p)
    p.add_argument("--airgap", type=float, default=None, help="in config units")
    p.add_argument("--load", default="none", help="none | R=<ohms> | RL=<ohms>,<henries>")
    p.add_argument("--v-exc", type=float, default=2.5)
    p.add_argument("--f-exc", type=float, default=4000.0)
    p.set_defaults(func=cmd_gain)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = load_config(args.config)
        return args.func(cfg, args)
    except GeometryError as exc:
        print("geometry validation failed:", file=sys.stderr)
        print(exc.report(), file=sys.stderr)
    except (RotxfmrError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


def run():
    sys.exit(main())
