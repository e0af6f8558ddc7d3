"""Object recognition and stimulus-intensity estimation.

Objects are presented as synthetic feature vectors (a fixed prototype
per object plus Gaussian noise, clamped to [0, 1]). A small Kohonen map
clusters the vectors and carries a per-node label tally for recognition;
a linear multi-class readout trained by the delta rule

    d_omega[i, j] = lr * vf[i] * (target[j] - prediction[j])

maps features to the internal-need axis and supplies the stimulus
intensities that amplify motivation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, NotOneHot, UnlabeledCluster
from .homeostasis import NEEDS, NeedKind, StimulusIntensity, need_index


class ObjectKind(Enum):
    COOKIE = "cookie"
    DRINK = "drink"
    TEDDY_BEAR = "teddy_bear"


OBJECTS: tuple[ObjectKind, ...] = (
    ObjectKind.COOKIE,
    ObjectKind.DRINK,
    ObjectKind.TEDDY_BEAR,
)

# Object <-> need bijection: each object satisfies exactly one need.
SATISFIES: dict[ObjectKind, NeedKind] = {
    ObjectKind.COOKIE: NeedKind.HUNGER,
    ObjectKind.DRINK: NeedKind.THIRST,
    ObjectKind.TEDDY_BEAR: NeedKind.CURIOSITY,
}
OBJECT_FOR_NEED: dict[NeedKind, ObjectKind] = {v: k for k, v in SATISFIES.items()}


def satisfies(kind: ObjectKind) -> NeedKind:
    return SATISFIES[kind]


def object_index(kind: ObjectKind) -> int:
    return OBJECTS.index(kind)


def object_from_name(name: str) -> ObjectKind:
    for o in OBJECTS:
        if o.value == name:
            return o
    raise ValueError(f"unknown object name: {name!r}")


_PROTO_HIGH = 0.9
_PROTO_LOW = 0.1


def object_prototype(kind: ObjectKind, dim: int = 16) -> np.ndarray:
    """Block-structured prototype vector for an object.

    Each object owns one contiguous block of high components, so any two
    prototypes differ in at least two blocks and their L2 distance is at
    least 0.5 * sqrt(dim).
    """
    if dim < 3:
        raise ValueError("feature dimension must be >= 3")
    sizes = [dim // 3] * 3
    for i in range(dim % 3):
        sizes[i] += 1
    starts = [0, sizes[0], sizes[0] + sizes[1]]
    proto = np.full(dim, _PROTO_LOW)
    i = object_index(kind)
    proto[starts[i] : starts[i] + sizes[i]] = _PROTO_HIGH
    return proto


def synth_features(
    kind: ObjectKind,
    noise_sigma: float,
    rng: np.random.Generator,
    dim: int = 16,
) -> np.ndarray:
    """Prototype plus iid Gaussian noise, clamped to [0, 1].

    Always consumes the same number of draws from ``rng`` regardless of
    sigma, so feature streams stay aligned across configurations.
    """
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be >= 0")
    noise = rng.normal(0.0, 1.0, size=dim)
    vf = object_prototype(kind, dim) + noise_sigma * noise
    return np.clip(vf, 0.0, 1.0)


@dataclass
class SomGrid:
    """Kohonen map with a per-node label tally used for recognition.

    learning_rate and radius decay geometrically from their start to end
    values over ``decay_steps`` training steps, then hold.
    """

    weights: np.ndarray  # (rows*cols, dim)
    rows: int
    cols: int
    lr_start: float = 0.5
    lr_end: float = 0.01
    radius_start: float = 2.0
    radius_end: float = 1.0
    decay_steps: int = 150
    step: int = 0
    label_counts: np.ndarray = field(default=None)  # (rows*cols, n_objects)

    def __post_init__(self) -> None:
        if self.label_counts is None:
            self.label_counts = np.zeros((self.rows * self.cols, len(OBJECTS)), dtype=int)

    @classmethod
    def create(
        cls,
        rows: int = 4,
        cols: int = 4,
        dim: int = 16,
        rng: np.random.Generator | None = None,
        **schedule,
    ) -> "SomGrid":
        if rng is None:
            rng = np.random.default_rng(0)
        weights = rng.uniform(0.0, 1.0, size=(rows * cols, dim))
        schedule.setdefault("radius_start", max(rows, cols) / 2.0)
        return cls(weights=weights, rows=rows, cols=cols, **schedule)

    @property
    def dim(self) -> int:
        return self.weights.shape[1]

    def _interp(self, start: float, end: float) -> float:
        if start == end or start <= 0.0:
            return start
        if self.decay_steps <= 0:
            return end
        t = min(self.step / self.decay_steps, 1.0)
        return start * (end / start) ** t

    @property
    def learning_rate(self) -> float:
        return self._interp(self.lr_start, self.lr_end)

    @property
    def radius(self) -> float:
        return self._interp(self.radius_start, self.radius_end)

    def node_position(self, index: int) -> tuple[int, int]:
        return divmod(index, self.cols)


def som_assign(grid: SomGrid, sample: np.ndarray) -> int:
    """Index of the best-matching unit; ties go to the lowest index."""
    sample = np.asarray(sample, dtype=float)
    if sample.shape != (grid.dim,):
        raise DimensionMismatch(f"sample shape {sample.shape} != ({grid.dim},)")
    dists = np.linalg.norm(grid.weights - sample, axis=1)
    return int(np.argmin(dists))


def som_train_step(
    grid: SomGrid,
    sample: np.ndarray,
    label: ObjectKind | None = None,
) -> SomGrid:
    """Pull the BMU neighborhood toward the sample; tally the label if given."""
    bmu = som_assign(grid, sample)
    lr = grid.learning_rate
    radius = grid.radius
    br, bc = grid.node_position(bmu)
    positions = np.array([grid.node_position(i) for i in range(grid.weights.shape[0])])
    grid_dist = np.linalg.norm(positions - np.array([br, bc]), axis=1)
    within = grid_dist <= radius
    if radius > 0:
        factor = np.exp(-(grid_dist**2) / (2.0 * radius**2))
    else:
        factor = (grid_dist == 0).astype(float)
    pull = (lr * factor)[:, None] * (sample - grid.weights)
    grid.weights[within] += pull[within]
    if label is not None:
        grid.label_counts[bmu, object_index(label)] += 1
    grid.step += 1
    return grid


@dataclass
class NeedPerceptron:
    """Linear map from features to per-need activations, delta-rule trained."""

    omega: np.ndarray  # (dim, n_needs)
    learning_rate: float = 0.1

    def __post_init__(self) -> None:
        if not (0.0 < self.learning_rate <= 1.0):
            raise ValueError("learning rate must lie in (0, 1]")

    @classmethod
    def create(cls, dim: int = 16, learning_rate: float = 0.1) -> "NeedPerceptron":
        return cls(omega=np.zeros((dim, len(NEEDS))), learning_rate=learning_rate)

    @property
    def dim(self) -> int:
        return self.omega.shape[0]


def one_hot_state(need: NeedKind) -> np.ndarray:
    ris = np.zeros(len(NEEDS))
    ris[need_index(need)] = 1.0
    return ris


def predict_internal_state(p: NeedPerceptron, vf: np.ndarray) -> np.ndarray:
    """Linear readout of the internal-state axes, no squashing."""
    vf = np.asarray(vf, dtype=float)
    if vf.shape != (p.dim,):
        raise DimensionMismatch(f"features shape {vf.shape} != ({p.dim},)")
    return vf @ p.omega


def widrow_hoff_update(
    p: NeedPerceptron,
    vf: np.ndarray,
    ris: np.ndarray,
) -> NeedPerceptron:
    """One delta-rule step toward a one-hot internal-state target."""
    vf = np.asarray(vf, dtype=float)
    ris = np.asarray(ris, dtype=float)
    if vf.shape != (p.dim,):
        raise DimensionMismatch(f"features shape {vf.shape} != ({p.dim},)")
    if ris.shape != (len(NEEDS),):
        raise DimensionMismatch(f"target shape {ris.shape} != ({len(NEEDS)},)")
    if not (np.isin(ris, (0.0, 1.0)).all() and ris.sum() == 1.0):
        raise NotOneHot("internal-state target must be one-hot")
    isp = vf @ p.omega
    p.omega += p.learning_rate * np.outer(vf, ris - isp)
    return p


def stimulus_intensities(p: NeedPerceptron, vf: np.ndarray) -> dict[NeedKind, StimulusIntensity]:
    """Per-need intensities from a feature vector, clamped to [0, 1]."""
    isp = predict_internal_state(p, vf)
    return {
        n: StimulusIntensity(need=n, value=float(np.clip(isp[need_index(n)], 0.0, 1.0)))
        for n in NEEDS
    }


def recognize(
    grid: SomGrid,
    p: NeedPerceptron,
    vf: np.ndarray,
) -> tuple[ObjectKind, dict[NeedKind, StimulusIntensity]]:
    """Identify the object (majority label of the BMU) and its intensities.

    Raises UnlabeledCluster when the BMU has no label evidence yet; the
    session then falls back to ground-truth identity.
    """
    bmu = som_assign(grid, vf)
    counts = grid.label_counts[bmu]
    if counts.sum() == 0:
        raise UnlabeledCluster(f"map node {bmu} has no label evidence")
    kind = OBJECTS[int(np.argmax(counts))]
    return kind, stimulus_intensities(p, vf)


def som_state_dict(grid: SomGrid) -> dict:
    """Dense arrays with shape headers, ready for the episode archive."""
    return {
        "weights": {"shape": list(grid.weights.shape), "data": grid.weights.flatten().tolist()},
        "label_counts": {
            "shape": list(grid.label_counts.shape),
            "data": grid.label_counts.flatten().tolist(),
        },
        "rows": grid.rows,
        "cols": grid.cols,
        "step": grid.step,
    }


def perceptron_state_dict(p: NeedPerceptron) -> dict:
    return {
        "omega": {"shape": list(p.omega.shape), "data": p.omega.flatten().tolist()},
        "learning_rate": p.learning_rate,
    }


def _array_from_header(d: dict, dtype=float) -> np.ndarray:
    return np.array(d["data"], dtype=dtype).reshape(d["shape"])


def som_weights_from_state(d: dict) -> tuple[np.ndarray, np.ndarray]:
    """(weights, label_counts) reconstructed from a state dict."""
    return _array_from_header(d["weights"]), _array_from_header(d["label_counts"], dtype=int)


def perceptron_weights_from_state(d: dict) -> np.ndarray:
    return _array_from_header(d["omega"])


@dataclass
class PerceptionModel:
    """Map + readout bundle trained online during a session."""

    grid: SomGrid
    perceptron: NeedPerceptron
    noise_sigma: float
    dim: int

    @classmethod
    def create(
        cls,
        dim: int = 16,
        noise_sigma: float = 0.05,
        rows: int = 4,
        cols: int = 4,
        learning_rate: float = 0.1,
        rng: np.random.Generator | None = None,
        **som_schedule,
    ) -> "PerceptionModel":
        grid = SomGrid.create(rows=rows, cols=cols, dim=dim, rng=rng, **som_schedule)
        return cls(
            grid=grid,
            perceptron=NeedPerceptron.create(dim=dim, learning_rate=learning_rate),
            noise_sigma=noise_sigma,
            dim=dim,
        )

    def observe(self, vf: np.ndarray, kind: ObjectKind) -> None:
        """Train both components on a labeled observation."""
        som_train_step(self.grid, vf, label=kind)
        widrow_hoff_update(self.perceptron, vf, one_hot_state(satisfies(kind)))

    def recognize(self, vf: np.ndarray) -> tuple[ObjectKind, dict[NeedKind, StimulusIntensity]]:
        return recognize(self.grid, self.perceptron, vf)

    def state_dict(self) -> dict:
        return {
            "som": som_state_dict(self.grid),
            "readout": perceptron_state_dict(self.perceptron),
        }

    def scene_intensities(
        self, rng: np.random.Generator
    ) -> dict[NeedKind, StimulusIntensity]:
        """Stimulus intensity per need with all three objects in view.

        Each need's intensity comes from the features of the object able
        to satisfy it, drawn fresh for the current trial.
        """
        out: dict[NeedKind, StimulusIntensity] = {}
        for need in NEEDS:
            vf = synth_features(OBJECT_FOR_NEED[need], self.noise_sigma, rng, self.dim)
            isp = predict_internal_state(self.perceptron, vf)
            out[need] = StimulusIntensity(
                need=need, value=float(np.clip(isp[need_index(need)], 0.0, 1.0))
            )
        return out
