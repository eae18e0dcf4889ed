"""Test maps R^d -> R with certified Lipschitz upper bounds.

The zoo stands in for a generator network composed with a scalar projection.
Every map carries ``lip_bound``, an upper bound on its Lipschitz constant, and
``value_at_origin``.  Maps round-trip through a plain JSON description.
"""

from dataclasses import dataclass, field
import json

import numpy as np

from .errors import CertificationError, ParameterError
from .priors import SampleBatch
from . import rng as _rng

LINEAR = "Linear"
EUCLIDEAN_NORM = "EuclideanNorm"
AFFINE_1D = "Affine1D"
MLP = "MLP"
KINDS = (LINEAR, EUCLIDEAN_NORM, AFFINE_1D, MLP)

ACTIVATIONS = ("ReLU", "LeakyReLU", "Tanh")

CERT_INFLATION = 1e-6
RATIO_SLACK = 1e-9


def spectral_norm(matrix, rel_tol=1e-6, max_iter=1000):
    """Certified largest singular value via power iteration on ``M^T M``.

    The converged estimate is inflated by ``1 + 1e-6`` so that it stays an
    upper bound.  Raises ``CertificationError`` (carrying the last iterate)
    when ``max_iter`` is reached first.
    """
    m = np.atleast_2d(np.asarray(matrix, dtype=float))
    if m.size == 0:
        raise ParameterError("spectral_norm of an empty matrix")
    if not np.any(m):
        return 0.0
    gram = m.T @ m
    # deterministic start with no exact orthogonality to the usual top vectors
    v = 1.0 + np.arange(gram.shape[0]) / (7.0 * gram.shape[0])
    v /= np.linalg.norm(v)
    lam = float(v @ gram @ v)
    for _ in range(max_iter):
        w = gram @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            # start vector in the null space; restart from a coordinate probe
            v = np.roll(v, 1) + 0.5
            v /= np.linalg.norm(v)
            continue
        v = w / nw
        new = float(v @ gram @ v)
        if abs(new - lam) <= rel_tol * abs(new):
            return float(np.sqrt(max(new, 0.0)) * (1.0 + CERT_INFLATION))
        lam = new
    raise CertificationError(
        f"power iteration did not converge in {max_iter} iterations", last_iterate=v
    )


def _activation(name, slope):
    if name == "ReLU":
        return (lambda z: np.maximum(z, 0.0)), 1.0
    if name == "LeakyReLU":
        return (lambda z: np.where(z > 0, z, slope * z)), max(1.0, abs(slope))
    if name == "Tanh":
        return np.tanh, 1.0
    raise ParameterError(f"unknown activation {name!r}; expected one of {ACTIVATIONS}")


@dataclass(frozen=True)
class MLPArchitecture:
    layer_widths: tuple
    activation: str = "ReLU"
    weight_seed: int = 0
    weight_scale: float = 1.0
    slope: float = 0.01
    bias_scale: float = 0.1

    def __post_init__(self):
        widths = tuple(int(w) for w in self.layer_widths)
        object.__setattr__(self, "layer_widths", widths)
        if len(widths) < 2 or any(w < 1 for w in widths):
            raise ParameterError("layer_widths needs at least an input and an output width, all positive")
        if widths[-1] != 1:
            raise ParameterError("final layer width must be 1")
        if not self.weight_scale > 0:
            raise ParameterError("weight_scale must be positive")
        if self.bias_scale < 0:
            raise ParameterError("bias_scale must be nonnegative")
        _activation(self.activation, self.slope)

    def draw(self):
        """I.i.d. Gaussian weights scaled by weight_scale / sqrt(fan_in)."""
        weights, biases = [], []
        for i, (fan_in, fan_out) in enumerate(zip(self.layer_widths[:-1], self.layer_widths[1:])):
            g = _rng.keyed_generator(self.weight_seed, i, 0)
            weights.append(g.standard_normal((fan_out, fan_in)) * (self.weight_scale / np.sqrt(fan_in)))
            biases.append(g.standard_normal(fan_out) * self.bias_scale)
        return weights, biases


@dataclass(frozen=True)
class LipschitzMap:
    kind: str
    dim: int
    params: dict = field(repr=False)
    lip_bound: float
    value_at_origin: float
    description: dict = field(repr=False, compare=False)

    def __call__(self, x):
        return evaluate(self, x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _as_vector(v, name):
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if arr.ndim != 1 or arr.size == 0:
        raise ParameterError(f"{name} must be a nonempty vector")
    return arr


def _mlp_forward(params, x):
    act, _ = _activation(params["activation"], params["slope"])
    h = x
    last = len(params["weights"]) - 1
    for i, (w, b) in enumerate(zip(params["weights"], params["biases"])):
        h = h @ w.T + b
        if i < last:
            h = act(h)
    return h[:, 0]


def _raw_eval(kind, params, x):
    if kind == LINEAR:
        return x @ params["w"]
    if kind == EUCLIDEAN_NORM:
        return np.linalg.norm(x, axis=1)
    if kind == AFFINE_1D:
        return params["a"] * x[:, 0] + params["b"]
    return _mlp_forward(params, x)


def build_map(kind, params=None, seed=0):
    """Instantiate a zoo map with its Lipschitz certificate.

    Parameters
    ----------
    kind : {"Linear", "EuclideanNorm", "Affine1D", "MLP"}
    params : dict
        ``Linear``: ``w`` (vector) or ``dim`` for a seeded Gaussian vector.
        ``EuclideanNorm``: ``dim``.  ``Affine1D``: ``a``, ``b``.
        ``MLP``: either ``weights``/``biases``/``activation`` given explicitly,
        or architecture fields ``layer_widths``, ``activation``,
        ``weight_scale``, ``slope``, ``bias_scale``.
    seed : int
        Weight seed for randomly drawn parameters.
    """
    params = dict(params or {})
    description = {"kind": kind, **_jsonable(params), "seed": int(seed)}
    if kind == LINEAR:
        if "w" in params:
            w = _as_vector(params["w"], "w")
        elif "dim" in params:
            dim = int(params["dim"])
            if dim < 1:
                raise ParameterError("dim must be positive")
            w = _rng.keyed_generator(seed, 0, 0).standard_normal(dim) / np.sqrt(dim)
        else:
            raise ParameterError("Linear needs 'w' or 'dim'")
        resolved = {"w": w}
        dim = w.size
        lip = float(np.linalg.norm(w))
    elif kind == EUCLIDEAN_NORM:
        dim = int(params.get("dim", 0))
        if dim < 1:
            raise ParameterError("EuclideanNorm needs a positive 'dim'")
        resolved = {}
        lip = 1.0
    elif kind == AFFINE_1D:
        if "a" not in params or "b" not in params:
            raise ParameterError("Affine1D needs 'a' and 'b'")
        resolved = {"a": float(params["a"]), "b": float(params["b"])}
        dim = 1
        lip = abs(resolved["a"])
    elif kind == MLP:
        resolved, lip = _build_mlp(params, seed)
        dim = resolved["weights"][0].shape[1]
    else:
        raise ParameterError(f"unknown map kind {kind!r}; expected one of {KINDS}")
    f0 = float(_raw_eval(kind, resolved, np.zeros((1, dim)))[0])
    return LipschitzMap(kind, dim, resolved, lip, f0, description)


def _build_mlp(params, seed):
    activation = params.get("activation", "ReLU")
    slope = float(params.get("slope", 0.01))
    if "weights" in params:
        weights = [np.atleast_2d(np.asarray(w, dtype=float)) for w in params["weights"]]
        if not weights or any(w.size == 0 for w in weights):
            raise ParameterError("MLP weights must be nonempty")
        biases = params.get("biases")
        if biases is None:
            biases = [np.zeros(w.shape[0]) for w in weights]
        biases = [np.atleast_1d(np.asarray(b, dtype=float)) for b in biases]
        for a, b in zip(weights[:-1], weights[1:]):
            if b.shape[1] != a.shape[0]:
                raise ParameterError("MLP weight shapes do not chain")
        if weights[-1].shape[0] != 1:
            raise ParameterError("final layer width must be 1")
        if len(biases) != len(weights) or any(b.shape != (w.shape[0],) for w, b in zip(weights, biases)):
            raise ParameterError("MLP biases do not match weight shapes")
        _activation(activation, slope)
    else:
        arch = MLPArchitecture(
            layer_widths=tuple(params.get("layer_widths", ())),
            activation=activation,
            weight_seed=int(seed),
            weight_scale=float(params.get("weight_scale", 1.0)),
            slope=slope,
            bias_scale=float(params.get("bias_scale", 0.1)),
        )
        weights, biases = arch.draw()
    _, act_lip = _activation(activation, slope)
    lip = 1.0
    for w in weights:
        lip *= spectral_norm(w)
    lip *= act_lip ** (len(weights) - 1)
    return {"weights": weights, "biases": biases, "activation": activation, "slope": slope}, float(lip)


def evaluate(fmap, batch):
    """Apply ``fmap`` row-wise to a SampleBatch or an (n, d) array."""
    x = batch.data if isinstance(batch, SampleBatch) else np.asarray(batch, dtype=float)
    if x.ndim == 1 and fmap.dim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[1] != fmap.dim:
        raise ParameterError(f"input dimension {x.shape[-1] if x.ndim else 0} does not match map dimension {fmap.dim}")
    return _raw_eval(fmap.kind, fmap.params, x)


def difference_ratios(fmap, x, y):
    """|f(x) - f(y)| / ||x - y|| per pair; coincident pairs are dropped."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.atleast_2d(np.asarray(y, dtype=float))
    dist = np.linalg.norm(x - y, axis=1)
    keep = dist > 0
    if not np.any(keep):
        return np.empty(0)
    diff = np.abs(evaluate(fmap, x[keep]) - evaluate(fmap, y[keep]))
    return diff / dist[keep]


def certificate_check(fmap, n_pairs, seed):
    """Probe the certificate with random far pairs and near-coincident pairs.

    Half the pairs have independent Gaussian endpoints; the rest are
    perturbations of a Gaussian point by 1e-4 in a random direction.

    Returns
    -------
    dict with ``max_ratio``, ``pass`` and ``n_pairs`` (pairs actually used).
    """
    if n_pairs < 1:
        raise ParameterError("n_pairs must be >= 1")
    g = _rng.keyed_generator(seed, 0, 7)
    n_far = (n_pairs + 1) // 2
    n_near = n_pairs - n_far
    x = g.standard_normal((n_pairs, fmap.dim)) * 2.0
    y = np.empty_like(x)
    y[:n_far] = g.standard_normal((n_far, fmap.dim)) * 2.0
    u = g.standard_normal((n_near, fmap.dim))
    # unit offsets keep the pair distance at 1e-4, away from cancellation noise
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    y[n_far:] = x[n_far:] + 1e-4 * u
    ratios = difference_ratios(fmap, x, y)
    max_ratio = float(ratios.max()) if ratios.size else 0.0
    return {
        "max_ratio": max_ratio,
        "pass": max_ratio <= fmap.lip_bound * (1.0 + RATIO_SLACK),
        "n_pairs": int(ratios.size),
    }


def to_json(fmap):
    return json.dumps(fmap.description, sort_keys=True)


def from_description(desc):
    desc = dict(desc)
    kind = desc.pop("kind", None)
    seed = desc.pop("seed", 0)
    return build_map(kind, desc, seed)


def from_json(text):
    return from_description(json.loads(text))


def zoo(dim, seed=0, hidden=32):
    """The shipped maps available at input dimension ``dim``, keyed by name."""
    maps = {
        "linear": build_map(LINEAR, {"dim": dim}, seed),
        "euclidean_norm": build_map(EUCLIDEAN_NORM, {"dim": dim}),
        "mlp_relu": build_map(MLP, {"layer_widths": [dim, hidden, 1], "activation": "ReLU"}, seed),
        "mlp_tanh": build_map(MLP, {"layer_widths": [dim, hidden, 1], "activation": "Tanh"}, seed),
        "mlp_leaky": build_map(
            MLP, {"layer_widths": [dim, hidden, hidden, 1], "activation": "LeakyReLU", "slope": 0.2}, seed
        ),
    }
    if dim == 1:
        maps["identity"] = build_map(LINEAR, {"w": [1.0]})
        maps["affine"] = build_map(AFFINE_1D, {"a": -2.0, "b": 0.5})
    return maps
