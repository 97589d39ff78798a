"""Command-line front end.

Every subcommand builds validated inputs, calls the library, and writes
rows as CSV or JSON. Values are written with 17 significant digits so that
CSV and JSON carry identical numbers.
"""
import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from gravtime import __version__, stationary, tables, wavepacket
from gravtime.core_model import (
    G_STANDARD,
    HBAR,
    Particle,
    Scenario,
    ValidationError,
    cst,
    dimensionless,
    get_particle,
    scales,
)
from gravtime.verify import run_checks

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFY_FAILED = 2

DEFAULTS = {
    "particle": "neutron",
    "mass_kg": None,
    "g": G_STANDARD,
    "zi": 0.0,
    "zcap": None,
    "vi": None,
    "width_d": 1e-6,
    "beta_min": 0.0,
    "beta_max": 400.0,
    "points": 201,
    "variants": "1,10,0.1",
    "format": "csv",
    "out": None,
    "tol": None,
    "method": "closed",
    "which": "II",
    "figure": 2,
    "return_to": "start",
}
_FLOAT_KEYS = {"mass_kg", "g", "zi", "zcap", "vi", "width_d", "beta_min", "beta_max", "tol"}
_INT_KEYS = {"points", "figure"}


# --- configuration ------------------------------------------------------

def read_config(path):
    """Parse a ``key = value`` file; ``#`` starts a comment, dashes equal underscores."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.lstrip("-").replace("-", "_")
            if key not in DEFAULTS:
                raise ValidationError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def _coerce(key, value):
    if value is None:
        return None
    try:
        if key in _FLOAT_KEYS:
            return float(value)
        if key in _INT_KEYS:
            return int(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{key}: cannot parse {value!r}") from None
    return value


def resolve(args):
    """Merge flags over the config file over built-in defaults."""
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    merged = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = _coerce(key, flag)
        elif key in cfg:
            merged[key] = _coerce(key, cfg[key])
        else:
            merged[key] = default
    for key in ("g", "width_d", "tol", "mass_kg"):
        v = merged[key]
        if v is not None and not (math.isfinite(v) and v > 0.0):
            raise ValidationError(f"{key} must be positive, got {v!r}")
    if merged["format"] not in ("csv", "json"):
        raise ValidationError("format must be csv or json")
    return merged


def _particle(cfg):
    if cfg["mass_kg"] is not None:
        return Particle(cfg["particle"] if cfg["particle"] != DEFAULTS["particle"] else "custom",
                        cfg["mass_kg"], repr(cfg["mass_kg"]))
    return get_particle(cfg["particle"])


def _scenario(cfg):
    part = _particle(cfg)
    if cfg["zcap"] is not None and cfg["vi"] is not None:
        raise ValidationError("give either --zcap or --vi, not both")
    if cfg["zcap"] is not None:
        return Scenario(part, cfg["g"], cfg["zi"], cfg["zcap"])
    vi = cfg["vi"] if cfg["vi"] is not None else 1.0
    return Scenario.from_speed(part, vi, cfg["g"], cfg["zi"])


def _meta(cfg, particle=None, **extra):
    meta = {
        "tool": "gravtime",
        "version": __version__,
        "hbar": HBAR,
        "g": cfg["g"],
    }
    if particle is not None:
        meta["particle"] = particle.name
        meta["mass_kg"] = particle.mass
    meta.update(extra)
    return meta


# --- output -------------------------------------------------------------

def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, (int, np.integer)):
        return int(v)
    return v


def render(rows, meta, fmt):
    """Rows (list of dicts sharing keys) as CSV text or a JSON document."""
    if fmt == "json":
        doc = {"meta": {k: _json_value(v) for k, v in meta.items()},
               "rows": [{k: _json_value(v) for k, v in r.items()} for r in rows]}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(rows[0]))
        for r in rows:
            writer.writerow([_fmt(v) for v in r.values()])
    return buf.getvalue()


def _emit(text, cfg):
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands -------------------------------------------------------------

def cmd_cst(cfg):
    sc = _scenario(cfg)
    sc_scales = scales(sc.particle, sc.g, sc.hbar)
    dim = dimensionless(sc)
    row = {
        "particle": sc.particle.name,
        "z_i_m": sc.z_i,
        "z_cap_m": sc.z_cap,
        "v_i_m_per_s": sc.v_i,
        "cst_s": cst(sc),
        "L_q_m": sc_scales.L_q,
        "T_q_s": sc_scales.T_q,
        "beta_q": dim.beta_q,
        "alpha_q": dim.alpha_q,
    }
    return [row], _meta(cfg, sc.particle)


def cmd_qst_stationary(cfg):
    sc = _scenario(cfg)
    method = cfg["method"]
    tb = stationary.qst_total(sc)
    rows = []
    segs = {
        "rise": stationary.rise_time,
        "penetrate": stationary.penetrate_time,
        "withdraw": stationary.withdraw_time,
        "fall": stationary.fall_time,
    }
    for name, fn in segs.items():
        rows.append({"quantity": f"{name}_s", "value": fn(sc, method=method)})
    rows.append({"quantity": "total_s", "value": tb.total})
    rows.append({"quantity": "cst_s", "value": tb.cst})
    rows.append({"quantity": "qst_over_cst", "value": tb.ratio})
    rows.append({"quantity": "dwell_s", "value": stationary.dwell_time(sc)})
    rows.append({"quantity": "zero_flight_s", "value": stationary.zero_flight_time(sc.particle, sc.g)})
    return rows, _meta(cfg, sc.particle, method=method, z_i=sc.z_i, z_cap=sc.z_cap)


def _wavepacket_params(cfg):
    part = _particle(cfg)
    if cfg["zcap"] is not None:
        if cfg["vi"] is not None:
            raise ValidationError("give either --zcap or --vi, not both")
        if cfg["zcap"] <= cfg["zi"]:
            raise ValidationError("zcap must lie above zi")
        vi = math.sqrt(2.0 * cfg["g"] * (cfg["zcap"] - cfg["zi"]))
    else:
        vi = cfg["vi"] if cfg["vi"] is not None else 1.0
    return wavepacket.WavepacketParams(part.mass, cfg["g"], cfg["width_d"], cfg["zi"], vi), part


def cmd_qst_wavepacket(cfg):
    p, part = _wavepacket_params(cfg)
    t1 = tables.table_i(p, return_to=cfg["return_to"])
    row = {
        "cst_s": t1["cst_s"],
        "qst_bohmian_s": wavepacket.qst_wp_bohmian(p),
        "qst_copenhagen_s": wavepacket.qst_wp_copenhagen(p),
        "return_numeric_s": t1["numeric_bohmian_over_cst"] * p.cst,
        "bohmian_over_cst": t1["bohmian_over_cst"],
        "copenhagen_over_cst": t1["copenhagen_over_cst"],
        "numeric_over_cst": t1["numeric_bohmian_over_cst"],
        "crossover_width_m": t1["crossover_width_m"],
        "width_ok": t1["width_ok"],
    }
    return [row], _meta(cfg, part, d=p.d, v_i=p.v_i, return_to=cfg["return_to"])


def cmd_table(cfg, which=None):
    which = (which or cfg["which"]).upper()
    if which == "I":
        rows, meta = cmd_qst_wavepacket(cfg)
        meta["table"] = "I"
        return rows, meta
    if which != "II":
        raise ValidationError("table must be I or II")
    rows = []
    for r in tables.table_ii(cfg["g"]):
        rows.append({
            "particle": r.particle,
            "mass_kg": r.mass_kg,
            "T_q_s": r.T_q,
            "collision_s": r.collision,
            "collision_over_Tq": r.collision_over_Tq,
            "printed_T_q_s": r.paper_T_q,
            "printed_collision_s": r.paper_collision,
            "printed_collision_over_Tq": r.paper_collision_over_Tq,
            "T_q_rel_diff": r.T_q_rel_diff,
        })
    return rows, _meta(cfg, table="II")


def cmd_sweep(cfg, figure=None, mass_variants=None):
    figure = int(figure if figure is not None else cfg["figure"])
    if figure not in (2, 3):
        raise ValidationError("figure must be 2 or 3")
    if mass_variants is None:
        try:
            mass_variants = [float(s) for s in str(cfg["variants"]).split(",") if s.strip()]
        except ValueError:
            raise ValidationError(f"cannot parse variants {cfg['variants']!r}") from None
    if not mass_variants or any(not (k > 0.0) for k in mass_variants):
        raise ValidationError("mass variants must be positive factors")
    bmin, bmax, n = cfg["beta_min"], cfg["beta_max"], cfg["points"]
    if n < 2:
        raise ValidationError("points must be at least 2")
    if not (0.0 <= bmin < bmax) or not math.isfinite(bmax):
        raise ValidationError("need 0 <= beta_min < beta_max")
    if figure == 3 and bmin == 0.0:
        # the ratio is undefined at zero flight
        bmin = min(1e-2, bmax / 2.0)
    # beta_q of the reference mass m sets the common axis cst / T_q(m) = 4 sqrt(beta)
    x = np.linspace(4.0 * math.sqrt(bmin), 4.0 * math.sqrt(bmax), n)
    rows = []
    for kappa in mass_variants:
        qst, ratio = stationary.figure_series(x, kappa)
        for xi, qi, ri in zip(x, qst, ratio):
            row = {"mass_factor": kappa, "cst_over_Tq": xi}
            if figure == 2:
                row["qst_over_Tq"] = qi
            else:
                row["qst_over_cst"] = ri
            rows.append(row)
    return rows, _meta(cfg, _particle(cfg), figure=figure)


def cmd_verify(cfg, tolerances=None):
    tol = dict(tolerances or {})
    if cfg["tol"] is not None:
        for key in ("closed_vs_quadrature", "dwell_identity"):
            tol.setdefault(key, cfg["tol"])
    results = run_checks(tol)
    rows = [r.as_dict() for r in results]
    return rows, _meta(cfg, all_passed=all(r.passed for r in results))


_COMMANDS = {
    "cst": cmd_cst,
    "qst-wavepacket": cmd_qst_wavepacket,
    "qst-stationary": cmd_qst_stationary,
    "sweep": cmd_sweep,
    "table": cmd_table,
    "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--particle", help="catalog name (electron, neutron, rubidium-87, cesium-133)")
    common.add_argument("--mass-kg", dest="mass_kg", help="custom mass in kg (overrides the catalog)")
    common.add_argument("--g", help=f"gravitational acceleration, m/s^2 (default {G_STANDARD})")
    common.add_argument("--zi", help="launch height, m")
    common.add_argument("--zcap", help="turning height, m")
    common.add_argument("--vi", help="launch speed, m/s (default 1)")
    common.add_argument("--width-d", dest="width_d", help="wavepacket width d, m")
    common.add_argument("--beta-min", dest="beta_min")
    common.add_argument("--beta-max", dest="beta_max")
    common.add_argument("--points")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--tol", help="relative tolerance override for verify")

    parser = argparse.ArgumentParser(
        prog="gravtime",
        description="Classical and quantum scattering times under uniform gravity.",
    )
    parser.add_argument("--version", action="version", version=f"gravtime {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("cst", parents=[common], help="classical time and quantum scales")
    p = sub.add_parser("qst-wavepacket", parents=[common], help="Gaussian wavepacket times")
    p.add_argument("--return-to", dest="return_to", choices=("start", "launch"))
    p = sub.add_parser("qst-stationary", parents=[common], help="stationary-state time segments")
    p.add_argument("--method", choices=("closed", "quadrature"))
    p = sub.add_parser("sweep", parents=[common], help="figure data: QST against CST")
    p.add_argument("--figure", choices=("2", "3"))
    p.add_argument("--variants", help="comma-separated mass factors (default 1,10,0.1)")
    p = sub.add_parser("table", parents=[common], help="reproduce table I or II")
    p.add_argument("which", nargs="?", choices=("I", "II", "i", "ii"))
    p.add_argument("--return-to", dest="return_to", choices=("start", "launch"))
    sub.add_parser("verify", parents=[common], help="run the consistency checks")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        rows, meta = _COMMANDS[args.command](cfg)
        _emit(render(rows, meta, cfg["format"]), cfg)
    except (ValidationError, ValueError, OSError) as exc:
        print(f"gravtime: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.command == "verify" and not meta.get("all_passed", False):
        for r in rows:
            if not r["passed"]:
                print(f"gravtime: check {r['name']} failed: measured {r['measured']:.3e} "
                      f"> allowed {r['allowed']:.3e}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
