"""
Exact k-nearest-neighbor selection.

D = 1 keeps a sort permutation and widens a window around the insertion
point; D >= 2 uses a kd-tree (median split on the widest axis, leaves of
at most ``LEAF_SIZE`` points) searched branch-and-bound with bounding-box
pruning. Equidistant candidates are ranked by lower dataset index in
every path, so the indexed search and ``brute_force_knn`` agree exactly.
"""
import heapq
import logging
from dataclasses import dataclass

import numpy as np

from src.geometry.dataset import Dataset, as_query
from src.utils.errors import InsufficientPointsError, InvalidKError

logger = logging.getLogger(__name__)

LEAF_SIZE = 16


def point_distances(points, query):
    # Euclidean distances from every row of points to query.
    return np.sqrt(np.sum((points - query) ** 2, axis=1))


@dataclass(frozen=True, eq=False)
class NeighborSet:
    # The K nearest samples of a query point, closest first.
    query: np.ndarray
    indices: np.ndarray
    distances: np.ndarray

    @property
    def d_max(self):
        return float(self.distances[-1])

    def __len__(self):
        return self.indices.shape[0]


def check_neighbor_count(k, n):
    if int(k) != k or k < 1:
        raise InvalidKError(f"K = {k}")
    if k > n:
        raise InsufficientPointsError(f"K = {k} exceeds N = {n}")
    return int(k)


def _select(candidates, distances, k):
    # Keep the k best candidates ordered by (distance, index).
    order = np.lexsort((candidates, distances))[:k]
    return candidates[order], distances[order]


class _Node:
    __slots__ = ("lower", "upper", "indices", "left", "right")

    def __init__(self, lower, upper):
        self.lower = lower
        self.upper = upper
        self.indices = None
        self.left = None
        self.right = None

    def box_distance(self, query):
        gap = np.maximum(self.lower - query, 0.0) + np.maximum(query - self.upper, 0.0)
        return float(np.sqrt(np.sum(gap ** 2)))


class SpatialIndex:
    # Immutable exact-KNN index over a Dataset's positions.

    def __init__(self, dataset: Dataset, leaf_size: int = LEAF_SIZE):
        if leaf_size < 1:
            raise ValueError(f"leaf_size ({leaf_size}) must be at least 1")
        self.dataset = dataset
        self.positions = dataset.positions
        self.leaf_size = leaf_size
        self.order = None
        self.sorted_coords = None
        self.root = None
        if dataset.dimension == 1:
            coords = self.positions[:, 0]
            self.order = np.argsort(coords, kind="stable")
            self.sorted_coords = coords[self.order]
            self.order.flags.writeable = False
            self.sorted_coords.flags.writeable = False
        else:
            self.root = self._build(np.arange(len(dataset)))
        logger.debug(
            f"Built {'sorted' if self.root is None else 'kd-tree'} index "
            f"over {len(dataset)} points in {dataset.dimension}D."
        )

    @property
    def dimension(self):
        return self.dataset.dimension

    def __len__(self):
        return len(self.dataset)

    def _build(self, indices):
        pts = self.positions[indices]
        node = _Node(pts.min(axis=0), pts.max(axis=0))
        if indices.shape[0] <= self.leaf_size:
            node.indices = indices
            return node
        axis = int(np.argmax(node.upper - node.lower))
        ranked = indices[np.argsort(pts[:, axis], kind="stable")]
        mid = ranked.shape[0] // 2
        node.left = self._build(ranked[:mid])
        node.right = self._build(ranked[mid:])
        return node

    def traverse(self):
        # Yield every dataset index once, in storage order.
        if self.root is None:
            yield from (int(i) for i in self.order)
            return
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.indices is not None:
                yield from (int(i) for i in node.indices)
            else:
                stack.append(node.right)
                stack.append(node.left)

    def query(self, xi, k):
        xi = as_query(xi, self.dimension)
        k = check_neighbor_count(k, len(self))
        if self.root is None:
            indices, distances = self._query_sorted(xi[0], k)
        else:
            indices, distances = self._query_tree(xi, k)
        return NeighborSet(xi, indices, distances)

    def _query_sorted(self, q, k):
        n = self.sorted_coords.shape[0]
        pos = int(np.searchsorted(self.sorted_coords, q))
        window = self.order[max(0, pos - k):min(n, pos + k)]
        _, dist = _select(window, np.abs(self.positions[window, 0] - q), k)
        radius = dist[-1]
        # Pull in every point tied with the K-th distance, a few ulps wide.
        slack = 4.0 * np.spacing(max(abs(q), radius, 1.0))
        lo = int(np.searchsorted(self.sorted_coords, q - radius - slack, side="left"))
        hi = int(np.searchsorted(self.sorted_coords, q + radius + slack, side="right"))
        candidates = self.order[lo:hi]
        return _select(
            candidates,
            point_distances(self.positions[candidates], np.array([q])),
            k,
        )

    def _query_tree(self, xi, k):
        # Max-heap on (distance, index) via negated keys.
        heap = []

        def worse_than_all(d):
            return len(heap) == k and d > -heap[0][0]

        def visit(node):
            if worse_than_all(node.box_distance(xi)):
                return
            if node.indices is not None:
                dists = point_distances(self.positions[node.indices], xi)
                for idx, d in zip(node.indices.tolist(), dists.tolist()):
                    key = (-d, -idx)
                    if len(heap) < k:
                        heapq.heappush(heap, key)
                    elif key > heap[0]:
                        heapq.heapreplace(heap, key)
                return
            first, second = node.left, node.right
            if second.box_distance(xi) < first.box_distance(xi):
                first, second = second, first
            visit(first)
            visit(second)

        visit(self.root)
        best = sorted((-d, -i) for d, i in heap)
        indices = np.array([i for _, i in best], dtype=int)
        distances = np.array([d for d, _ in best], dtype=float)
        return indices, distances


def build_index(dataset: Dataset) -> SpatialIndex:
    return SpatialIndex(dataset)


def k_nearest(index: SpatialIndex, xi, k) -> NeighborSet:
    return index.query(xi, k)


def brute_force_knn(dataset: Dataset, xi, k) -> NeighborSet:
    # Exhaustive selection with the same lower-index tie-break.
    xi = as_query(xi, dataset.dimension)
    k = check_neighbor_count(k, len(dataset))
    indices, distances = _select(
        np.arange(len(dataset)), point_distances(dataset.positions, xi), k
    )
    return NeighborSet(xi, indices, distances)
