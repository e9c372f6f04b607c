"""Deterministic text / CSV / JSON serialisation of run reports."""
from __future__ import annotations

import io
import json
import sys
from pathlib import Path

from .scenarios import RunReport, SweepReport
from .surfaces import SURFACES

TABLE_HEADER = "surface,obs1,label1,obs2,label2,probability"
SWEEP_HEADER = "phi,S,max_ch,lp_feasible"


def fmt(x: float) -> str:
    return f"{x:.17g}"


def table_rows(report: RunReport):
    for s in SURFACES:
        t = report.tables[s]
        o1, o2 = t.obs_pair
        for a, b, p in t.entries():
            yield s.value, o1.name, a, o2.name, b, p


def to_dict(report) -> dict:
    """Plain-data view used for JSON output."""
    if isinstance(report, SweepReport):
        return {
            "scenario": report.scenario,
            "tables": {},
            "consistency": {
                "no_signaling_max_deviation": report.max_no_signaling,
                "overlap_max_deviation": report.max_overlap,
            },
            "verdict": {
                "per_phi": [
                    {"phi": r.phi, "S": r.S, "max_ch": r.max_ch, "lp_feasible": r.lp_feasible}
                    for r in report.rows
                ],
                "infeasible_count": sum(not r.lp_feasible for r in report.rows),
            },
            "ch_max": max(r.max_ch for r in report.rows),
            "timing": report.timing,
        }
    v = report.verdict
    tables = {}
    for s in SURFACES:
        t = report.tables[s]
        tables[s.value] = {
            "observables": [o.name for o in t.obs_pair],
            "probs": [{"label1": a, "label2": b, "probability": p} for a, b, p in t.entries()],
        }
    consistency = {
        "no_signaling": {"ok": report.no_signaling.ok, "max_deviation": report.no_signaling.max_deviation},
        "overlap": {"ok": report.overlap.ok, "max_deviation": report.overlap.max_deviation},
    }
    if report.spectra is not None:
        consistency["spectra"] = report.spectra
    verdict = {
        "status": v.status,
        "phase1_objective": v.phase1_objective,
        "marginal": v.marginal,
        "certificate": None
        if v.certificate is None
        else {"inequality": v.certificate.ident, "value": v.certificate.value},
        "witness": None
        if v.witness is None
        else [
            {"A1": k[0], "A2": k[1], "B1": k[2], "B2": k[3], "p": p}
            for k, p in sorted(v.witness.items())
        ],
        "forced_values": list(report.forced),
        "notes": list(v.notes),
    }
    return {
        "scenario": report.scenario,
        "tables": tables,
        "consistency": consistency,
        "verdict": verdict,
        "ch_max": report.ch_max,
        "timing": report.timing,
    }


def render_json(report) -> str:
    return json.dumps(to_dict(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_csv(report) -> str:
    buf = io.StringIO()
    if isinstance(report, SweepReport):
        buf.write(SWEEP_HEADER + "\n")
        for r in report.rows:
            buf.write(f"{fmt(r.phi)},{fmt(r.S)},{fmt(r.max_ch)},{str(r.lp_feasible).lower()}\n")
    else:
        buf.write(TABLE_HEADER + "\n")
        for s, n1, a, n2, b, p in table_rows(report):
            buf.write(f"{s},{n1},{a},{n2},{b},{fmt(p)}\n")
    return buf.getvalue()


def _pass(ok: bool) -> str:
    return "pass" if ok else "FAIL"


def render_text(report) -> str:
    out = [f"scenario: {report.scenario}"]
    if isinstance(report, SweepReport):
        out.append(f"no-signaling max deviation: {fmt(report.max_no_signaling)}")
        out.append(f"overlap max deviation: {fmt(report.max_overlap)}")
        out.append(f"{'phi':>22} {'S':>22} {'max_ch':>22}  verdict")
        for r in report.rows:
            verdict = "feasible" if r.lp_feasible else "infeasible"
            out.append(f"{fmt(r.phi):>22} {fmt(r.S):>22} {fmt(r.max_ch):>22}  {verdict}")
    else:
        for s in SURFACES:
            t = report.tables[s]
            o1, o2 = t.obs_pair
            out.append(f"{s.value} ({o1.name}, {o2.name})")
            for a, b, p in t.entries():
                out.append(f"  {a} {b}  {fmt(p)}")
        ns, ov = report.no_signaling, report.overlap
        out.append(f"no-signaling: {_pass(ns.ok)} (max deviation {fmt(ns.max_deviation)})")
        out.append(f"overlap consistency: {_pass(ov.ok)} (max deviation {fmt(ov.max_deviation)})")
        if report.spectra is not None:
            for s, blocks in report.spectra["blocks"].items():
                for block, vals in blocks.items():
                    out.append(f"spectrum {s} {block}: " + " ".join(fmt(x) for x in vals))
            out.append(f"min nonzero eigenvalue gap: {fmt(report.spectra['min_gap'])}")
            out.append(f"correlated-subspace leak: {fmt(report.spectra['subspace_leak'])}")
        if report.forced:
            out.append("forced values:")
            out.extend(f"  {line}" for line in report.forced)
        v = report.verdict
        out.append(f"verdict: {v.status} (phase-one objective {fmt(v.phase1_objective)})")
        if v.certificate is not None:
            out.append(f"certificate: {v.certificate.ident} = {fmt(v.certificate.value)}")
        out.extend(f"note: {n}" for n in v.notes)
        if report.ch_max is not None:
            out.append(f"ch_max: {fmt(report.ch_max)}")
    if report.timing is not None:
        out.append(f"timing: {report.timing:.6f} s")
    return "\n".join(out) + "\n"


RENDERERS = {"text": render_text, "csv": render_csv, "json": render_json}


def emit(report, format: str = "text", out=None) -> str:
    """Serialise ``report``; write to ``out`` (path) or standard output."""
    text = RENDERERS[format](report)
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    return text
