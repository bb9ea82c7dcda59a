"""Structured tetrahedral background meshes of an axis-aligned box."""
from dataclasses import dataclass
from itertools import permutations

import numpy as np

# vertex count beyond which int64 indices into dense per-vertex arrays
# would no longer be safely addressable
MAX_VERTICES = 2**31 - 1


class MeshCapacityError(ValueError):
    pass


@dataclass(frozen=True)
class Box:
    lower: tuple
    upper: tuple

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        if lo.shape != (3,) or hi.shape != (3,) or np.any(hi <= lo):
            raise ValueError(f"degenerate box {self.lower} .. {self.upper}")

    @classmethod
    def cube(cls, half_side):
        return cls((-half_side,) * 3, (half_side,) * 3)

    @property
    def side(self):
        return float(self.upper[0] - self.lower[0])

    @property
    def volume(self):
        return float(np.prod(np.subtract(self.upper, self.lower)))


SPHERE_BOX = Box.cube(5.0 / 3.0)
GENUS_BOX = Box.cube(3.0)


@dataclass(frozen=True, eq=False)
class BackgroundMesh:
    vertices: np.ndarray  # (nv, 3)
    tets: np.ndarray  # (nt, 4), positively oriented
    level: int
    h: float
    box: Box
    cells_per_side: int

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_tets(self):
        return len(self.tets)

    def tet_coords(self, idx=None):
        tets = self.tets if idx is None else self.tets[idx]
        return self.vertices[tets]

    def signed_volumes(self, idx=None):
        X = self.tet_coords(idx)
        e = X[:, 1:] - X[:, :1]
        return np.linalg.det(e) / 6.0


def cells_per_side(level):
    return 2 ** (level + 1)


def mesh_size(level, box):
    """Mesh size ``side / 2**(level+1)`` used throughout the experiments."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    return box.side / cells_per_side(level)


def _kuhn_pattern():
    # One tet per axis permutation: walk from corner 000 to 111 along the
    # permuted unit steps.  Every cube uses the same main diagonal, which
    # keeps face diagonals matched between neighbours.
    tets = []
    for perm in permutations(range(3)):
        corner = np.zeros(3, dtype=int)
        path = [corner.copy()]
        for axis in perm:
            corner[axis] += 1
            path.append(corner.copy())
        tets.append(np.array(path))
    out = []
    for path in tets:
        e = path[1:] - path[0]
        if np.linalg.det(e.astype(float)) < 0:
            path = path[[0, 2, 1, 3]]
        out.append(path)
    return np.array(out)  # (6, 4, 3) integer offsets


KUHN_OFFSETS = _kuhn_pattern()


def build_cube_mesh(level, box=SPHERE_BOX):
    """Kuhn (Freudenthal) triangulation with ``2**(level+1)`` cells per side.

    Vertices are numbered lexicographically in (i, j, k) with ``k``
    fastest.  Each cell contributes six tets of equal volume, all with
    positive orientation.
    """
    if level < 0:
        raise ValueError("level must be nonnegative")
    n = cells_per_side(level)
    if (n + 1) ** 3 > MAX_VERTICES:
        raise MeshCapacityError(f"level {level} needs {(n + 1) ** 3} vertices")
    lo = np.asarray(box.lower, dtype=float)
    hi = np.asarray(box.upper, dtype=float)
    ticks = [np.linspace(lo[a], hi[a], n + 1) for a in range(3)]
    I, J, K = np.meshgrid(*ticks, indexing="ij")
    vertices = np.stack([I.ravel(), J.ravel(), K.ravel()], axis=1)

    ci, cj, ck = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    base = np.stack([ci.ravel(), cj.ravel(), ck.ravel()], axis=1)  # (nc, 3)
    stride = np.array([(n + 1) ** 2, n + 1, 1])
    corner_ids = base @ stride  # (nc,)
    local = KUHN_OFFSETS @ stride  # (6, 4)
    tets = (corner_ids[:, None, None] + local[None]).reshape(-1, 4)
    return BackgroundMesh(
        vertices=vertices,
        tets=tets.astype(np.int64),
        level=level,
        h=mesh_size(level, box),
        box=box,
        cells_per_side=n,
    )


def tet_faces(tets):
    """All four faces of every tet as sorted vertex triples, shape (4*nt, 3)."""
    f = tets[:, [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]].reshape(-1, 3)
    return np.sort(f, axis=1)


def radius_ratio(X):
    """Circumradius over inradius for tets with coordinates ``X`` (nt, 4, 3)."""
    e = X[:, 1:] - X[:, :1]
    vol = np.abs(np.linalg.det(e)) / 6.0
    faces = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]
    area = sum(
        0.5 * np.linalg.norm(
            np.cross(X[:, f[1]] - X[:, f[0]], X[:, f[2]] - X[:, f[0]]), axis=1
        )
        for f in faces
    )
    inradius = 3.0 * vol / area
    # circumcentre c solves 2 (x_i - x_0) . c = |x_i|^2 - |x_0|^2
    rhs = 0.5 * (np.sum(X[:, 1:] ** 2, axis=2) - np.sum(X[:, :1] ** 2, axis=2))
    c = np.linalg.solve(e, rhs[..., None])[..., 0]
    circ = np.linalg.norm(c - X[:, 0], axis=1)
    return circ / inradius


def barycentric_gradients(X):
    """Constant gradients of the four barycentric coordinates, (..., 4, 3)."""
    X = np.asarray(X, dtype=float)
    e = X[..., 1:, :] - X[..., :1, :]
    inv = np.linalg.inv(e)
    g = np.swapaxes(inv, -1, -2)
    g0 = -g.sum(axis=-2, keepdims=True)
    return np.concatenate([g0, g], axis=-2)


def barycentric_coords(X, points):
    """Barycentric coordinates of ``points`` (..., nq, 3) in tets ``X`` (..., 4, 3)."""
    X = np.asarray(X, dtype=float)
    e = X[..., 1:, :] - X[..., :1, :]
    d = np.asarray(points) - X[..., None, 0, :]
    mu = np.linalg.solve(np.swapaxes(e, -1, -2)[..., None, :, :], d[..., None])[..., 0]
    return np.concatenate([1.0 - mu.sum(axis=-1, keepdims=True), mu], axis=-1)
