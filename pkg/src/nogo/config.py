"""YAML scenario files.

Example (the Hardy-Jordan run)::

    name: hardy
    dims: [2, 2]
    state:                       # (re, im) per basis vector, subsystem 1 most significant
      - [0.28867513459481287, 0.0]
      - [-0.28867513459481287, 0.0]
      - [-0.28867513459481287, 0.0]
      - [-0.8660254037844386, 0.0]
    channels:
      1: hadamard                # identity | hadamard | block-hadamard | rotation:<phi> | dephasing:<p>
      2:
        unitary: [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]
                                 # or  kraus: [matrix, matrix, ...]
    observables:                 # one entry for all roles, or per role A1, A2, B1, B2
      labels: ["+", "-"]
      eigenvalues: [1, -1]
"""
from __future__ import annotations

from pathlib import Path

import numpy as np
import yaml

from .linalg import SubsystemLayout
from .objects import (
    block_hadamard_channel,
    computational_observable,
    dephasing_kraus,
    hadamard_channel,
    identity_channel,
    kraus_channel,
    make_state,
    rotation_unitary,
    unitary_channel,
    validate_channel,
)
from .surfaces import FourSurfaceScenario

ROLES = ("A1", "A2", "B1", "B2")


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.message, self.line, self.path = message, line, path
        super().__init__(self.located())

    def located(self) -> str:
        where = self.path or "<config>"
        if self.line is not None:
            where += f":{self.line}"
        return f"{where}: {self.message}"


class _Lines:
    """Look up the 1-based source line of a key path in the composed YAML tree."""

    def __init__(self, root):
        self.root = root

    def __call__(self, *path) -> int | None:
        node = self.root
        line = node.start_mark.line + 1 if node is not None else None
        for key in path:
            nxt = None
            if isinstance(node, yaml.MappingNode):
                for k, v in node.value:
                    if str(k.value) == str(key):
                        nxt = v
                        line = k.start_mark.line + 1
                        break
            elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
                nxt = node.value[key]
                line = nxt.start_mark.line + 1
            if nxt is None:
                break
            node = nxt
        return line


def _complex_matrix(raw, what: str, line) -> np.ndarray:
    try:
        m = np.array([[complex(float(e[0]), float(e[1])) for e in row] for row in raw])
    except (TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"{what}: entries must be [re, im] pairs ({exc})", line) from None
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ConfigError(f"{what}: expected a square matrix", line)
    return m


def _channel(spec, k: int, dim: int, lines: _Lines):
    line = lines("channels", k)
    try:
        if spec is None or spec == "identity":
            ch = identity_channel(k, dim)
        elif isinstance(spec, str):
            kind, _, arg = spec.partition(":")
            if kind == "hadamard":
                ch = hadamard_channel(k, dim)
            elif kind == "block-hadamard":
                ch = block_hadamard_channel(k, dim)
            elif kind == "rotation":
                if dim != 2:
                    raise ValueError("rotation needs a qubit")
                phi = float(arg)
                ch = unitary_channel(k, rotation_unitary(k, phi), f"rotation:{phi!r}")
            elif kind == "dephasing":
                if dim != 2:
                    raise ValueError("dephasing needs a qubit")
                ch = dephasing_kraus(k, float(arg))
            else:
                raise ValueError(f"unknown channel builder {spec!r}")
        elif isinstance(spec, dict) and "unitary" in spec:
            ch = unitary_channel(k, _complex_matrix(spec["unitary"], f"channel {k}", line), "unitary")
        elif isinstance(spec, dict) and "kraus" in spec:
            ops = [_complex_matrix(m, f"channel {k} Kraus op {i}", line) for i, m in enumerate(spec["kraus"])]
            ch = kraus_channel(k, ops, "kraus")
        else:
            raise ValueError(f"cannot read channel spec {spec!r}")
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"channel {k}: {exc}", line) from None
    if ch.dim != dim:
        raise ConfigError(f"channel {k}: acts on dim {ch.dim}, subsystem has dim {dim}", line)
    rep = validate_channel(ch)
    if not rep.ok:
        raise ConfigError(f"channel {k}: {rep.message}", line)
    return ch


def _observable(spec, role: str, dim: int, line):
    if spec is None:
        if dim != 2:
            raise ConfigError(f"observable {role}: labels required for local dim {dim}", line)
        spec = {"labels": ["+", "-"], "eigenvalues": [1, -1]}
    try:
        return computational_observable(
            int(role[1]), [str(l) for l in spec["labels"]], [float(e) for e in spec["eigenvalues"]], dim, role
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"observable {role}: {exc}", line) from None


def parse_config(text: str, path: str | None = None) -> tuple[str, FourSurfaceScenario]:
    try:
        data = yaml.safe_load(text)
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"YAML syntax: {getattr(exc, 'problem', exc)}", mark.line + 1 if mark else None, path) from None
    lines = _Lines(root)
    try:
        return _build(data, lines)
    except ConfigError as exc:
        exc.path = path
        exc.args = (exc.located(),)
        raise


def _build(data, lines: _Lines):
    if not isinstance(data, dict):
        raise ConfigError("top level must be a mapping", 1)
    for key in ("dims", "state"):
        if key not in data:
            raise ConfigError(f"missing key {key!r}", 1)
    name = str(data.get("name", "custom"))
    try:
        layout = SubsystemLayout(tuple(int(d) for d in data["dims"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"dims: {exc}", lines("dims")) from None
    if len(layout) != 2:
        raise ConfigError("dims: exactly two subsystems required", lines("dims"))

    try:
        amps = [complex(float(p[0]), float(p[1])) for p in data["state"]]
    except (TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"state: amplitudes must be [re, im] pairs ({exc})", lines("state")) from None
    try:
        state = make_state(layout, amps)
    except ValueError as exc:
        raise ConfigError(f"state: {exc}", lines("state")) from None

    chans = data.get("channels") or {}
    if not isinstance(chans, dict):
        raise ConfigError("channels must be a mapping 1: ..., 2: ...", lines("channels"))
    chans = {int(k): v for k, v in chans.items()}
    c1 = _channel(chans.get(1), 1, layout.dims[0], lines)
    c2 = _channel(chans.get(2), 2, layout.dims[1], lines)

    obs_spec = data.get("observables") or {}
    if not isinstance(obs_spec, dict):
        raise ConfigError("observables must be a mapping", lines("observables"))
    obs = {}
    for role in ROLES:
        spec = obs_spec if "labels" in obs_spec else obs_spec.get(role)
        line = lines("observables", role) if role in obs_spec else lines("observables")
        obs[role] = _observable(spec, role, layout.dims[int(role[1]) - 1], line)

    try:
        scenario = FourSurfaceScenario(
            state.density(), c1, c2, (obs["A1"], obs["A2"]), (obs["B1"], obs["B2"])
        )
    except ValueError as exc:
        raise ConfigError(str(exc), 1) from None
    return name, scenario


def load_config(path) -> tuple[str, FourSurfaceScenario]:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", None, str(p)) from None
    return parse_config(text, str(p))
