"""Finite Markov decision processes solved by value iteration.

A model is the per-state reward vector, the transition tensor
``T[s, a, s']``, and a discount in (0, 1).  The Bellman update

    U'[s] = R[s] + gamma * max_a sum_s' T[s, a, s'] * U[s']

is a gamma-contraction in the max norm, so iterating it from any start
converges to the unique fixed point; stopping once the iterate moves less
than ``epsilon * (1 - gamma) / gamma`` guarantees the result is within
``epsilon`` of that fixed point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, NonConvergence

ROW_SUM_TOL = 1e-9
ITERATION_CAP = 10**6


@dataclass(frozen=True)
class MdpModel:
    """States, actions, transition tensor, rewards, and discount."""

    transitions: np.ndarray  # (n, m, n): T[s, a, s']
    rewards: np.ndarray  # (n,)
    gamma: float
    state_names: tuple[str, ...] = field(default=())
    action_names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        t = np.asarray(self.transitions, dtype=float)
        r = np.asarray(self.rewards, dtype=float)
        if t.ndim != 3 or t.shape[0] != t.shape[2]:
            raise DimensionMismatch(
                f"transition tensor must be (n, m, n), got {t.shape}"
            )
        n, m, _ = t.shape
        if n < 1 or m < 1:
            raise ValueError("need at least one state and one action")
        if r.shape != (n,):
            raise DimensionMismatch(f"rewards must have shape ({n},), got {r.shape}")
        if not np.all(np.isfinite(t)) or not np.all(np.isfinite(r)):
            raise ValueError("transitions and rewards must be finite")
        if np.any(t < 0):
            raise ValueError("transition probabilities must be non-negative")
        rowsums = t.sum(axis=2)
        if np.any(np.abs(rowsums - 1.0) > ROW_SUM_TOL):
            s, a = np.unravel_index(int(np.abs(rowsums - 1.0).argmax()), rowsums.shape)
            raise ValueError(f"T[{s},{a},:] sums to {rowsums[s, a]!r}, expected 1")
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"discount must lie strictly in (0, 1), got {self.gamma}")
        object.__setattr__(self, "transitions", t)
        object.__setattr__(self, "rewards", r)
        if not self.state_names:
            object.__setattr__(self, "state_names", tuple(f"s{i}" for i in range(n)))
        if not self.action_names:
            object.__setattr__(self, "action_names", tuple(f"a{i}" for i in range(m)))
        if len(self.state_names) != n or len(self.action_names) != m:
            raise DimensionMismatch("name lists do not match model dimensions")

    @property
    def n_states(self) -> int:
        return self.transitions.shape[0]

    @property
    def n_actions(self) -> int:
        return self.transitions.shape[1]


def _check_utilities(model: MdpModel, utilities: Sequence[float]) -> np.ndarray:
    u = np.asarray(utilities, dtype=float)
    if u.shape != (model.n_states,):
        raise DimensionMismatch(
            f"utility vector must have shape ({model.n_states},), got {u.shape}"
        )
    return u


def bellman_update(model: MdpModel, utilities: Sequence[float]) -> np.ndarray:
    """One Bellman update of the utility vector."""
    u = _check_utilities(model, utilities)
    expected = model.transitions @ u  # (n, m): expected next utility per action
    return model.rewards + model.gamma * expected.max(axis=1)


def value_iteration(
    model: MdpModel, epsilon: float = 1e-8
) -> tuple[np.ndarray, int]:
    """Iterate Bellman updates from zero until within ``epsilon`` of optimal.

    Returns the utility vector and the number of updates performed.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    threshold = epsilon * (1.0 - model.gamma) / model.gamma
    u = np.zeros(model.n_states)
    for iteration in range(1, ITERATION_CAP + 1):
        nxt = bellman_update(model, u)
        delta = float(np.max(np.abs(nxt - u)))
        u = nxt
        if delta < threshold:
            return u, iteration
    raise NonConvergence(f"no convergence within {ITERATION_CAP} iterations")


def extract_policy(model: MdpModel, utilities: Sequence[float]) -> np.ndarray:
    """Per state, the action with maximal expected next-state utility.

    Ties resolve to the lowest action index.
    """
    u = _check_utilities(model, utilities)
    expected = model.transitions @ u  # (n, m)
    return expected.argmax(axis=1)  # argmax returns the first maximum


def evaluate_policy(
    model: MdpModel, policy: Sequence[int], epsilon: float = 1e-8
) -> np.ndarray:
    """Utility of following ``policy`` forever: fixed point of R + gamma*T_pi*U.

    Solved iteratively under the same stopping contract as value iteration.
    """
    pi = np.asarray(policy, dtype=int)
    if pi.shape != (model.n_states,):
        raise DimensionMismatch(
            f"policy must have shape ({model.n_states},), got {pi.shape}"
        )
    if np.any(pi < 0) or np.any(pi >= model.n_actions):
        raise ValueError("policy contains an out-of-range action index")
    t_pi = model.transitions[np.arange(model.n_states), pi]  # (n, n)
    threshold = epsilon * (1.0 - model.gamma) / model.gamma
    u = np.zeros(model.n_states)
    for _ in range(ITERATION_CAP):
        nxt = model.rewards + model.gamma * (t_pi @ u)
        delta = float(np.max(np.abs(nxt - u)))
        u = nxt
        if delta < threshold:
            return u
    raise NonConvergence(f"no convergence within {ITERATION_CAP} iterations")


# --- text format -------------------------------------------------------------
#
# Sections in fixed order, one entry per line, '#' comments allowed:
#
#   STATES      state names, one per line
#   ACTIONS     action names, one per line
#   GAMMA       single discount value
#   REWARDS     one reward per state, in STATES order
#   TRANSITION  one row of n probabilities per (state, action) pair,
#               state-major: (s0,a0), (s0,a1), ..., (s1,a0), ...

_SECTIONS = ("STATES", "ACTIONS", "GAMMA", "REWARDS", "TRANSITION")


def parse_mdp(text: str) -> MdpModel:
    """Parse the plain-text model format documented above."""
    sections: dict[str, list[str]] = {name: [] for name in _SECTIONS}
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.upper() in _SECTIONS:
            current = line.upper()
            continue
        if current is None:
            raise ValueError(f"line {lineno}: content before any section header")
        sections[current].append(line)

    states = tuple(sections["STATES"])
    actions = tuple(sections["ACTIONS"])
    if not states or not actions:
        raise ValueError("STATES and ACTIONS sections must be non-empty")
    if len(sections["GAMMA"]) != 1:
        raise ValueError("GAMMA section must hold exactly one value")
    gamma = float(sections["GAMMA"][0])
    n, m = len(states), len(actions)
    if len(sections["REWARDS"]) != n:
        raise ValueError(f"expected {n} rewards, got {len(sections['REWARDS'])}")
    rewards = np.array([float(v) for v in sections["REWARDS"]])
    rows = sections["TRANSITION"]
    if len(rows) != n * m:
        raise ValueError(f"expected {n * m} transition rows, got {len(rows)}")
    tensor = np.zeros((n, m, n))
    for k, row in enumerate(rows):
        cells = [float(v) for v in row.split()]
        if len(cells) != n:
            raise ValueError(f"transition row {k + 1}: expected {n} cells")
        tensor[k // m, k % m] = cells
    return MdpModel(tensor, rewards, gamma, states, actions)


def load_mdp(path) -> MdpModel:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_mdp(fh.read())


def dump_mdp(model: MdpModel) -> str:
    """Serialize a model to the text format (inverse of :func:`parse_mdp`)."""
    lines = ["STATES"]
    lines.extend(model.state_names)
    lines.append("ACTIONS")
    lines.extend(model.action_names)
    lines.append("GAMMA")
    lines.append(repr(float(model.gamma)))
    lines.append("REWARDS")
    lines.extend(repr(float(v)) for v in model.rewards)
    lines.append("TRANSITION")
    for s in range(model.n_states):
        for a in range(model.n_actions):
            lines.append(" ".join(repr(float(v)) for v in model.transitions[s, a]))
    return "\n".join(lines) + "\n"
