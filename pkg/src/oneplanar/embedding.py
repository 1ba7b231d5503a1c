"""Face tracing and classification on the rotation system.

Faces are the orbits of the dart successor rule: from the dart u -> v,
the next dart leaves v toward the neighbor immediately after u in the
clockwise rotation of v.  Triangular faces split into true 3-faces (no
crossing corner) and false 3-faces (exactly one crossing corner).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, NamedTuple, Tuple

from .diagram import Diagram

TRUE_TRIANGLE = "true3"
FALSE_TRIANGLE = "false3"
BIG = "big"


class PreconditionNotTriangulated(Exception):
    """A query assumed all incident faces are 3-faces and one is not."""


class Dart(NamedTuple):
    tail: str
    head_index: int


@dataclass(frozen=True)
class Face:
    face_id: int
    boundary: Tuple[Dart, ...]

    @property
    def degree(self) -> int:
        return len(self.boundary)

    @property
    def corners(self) -> Tuple[str, ...]:
        return tuple(dart.tail for dart in self.boundary)


@dataclass(frozen=True)
class FaceSet:
    faces: Tuple[Face, ...]

    @cached_property
    def dart_to_face(self) -> Dict[Dart, int]:
        return {dart: f.face_id for f in self.faces for dart in f.boundary}

    @cached_property
    def dart_position(self) -> Dict[Dart, Tuple[int, int]]:
        """Map each dart to (face_id, position in the canonical boundary)."""
        return {
            dart: (f.face_id, p) for f in self.faces for p, dart in enumerate(f.boundary)
        }


def dart_head(d: Diagram, dart: Dart) -> str:
    return d.rotation(dart.tail)[dart.head_index]


def trace_faces(d: Diagram) -> FaceSet:
    """Decompose all darts into face boundaries.

    Face ids are assigned by the smallest contained dart, darts ordered by
    (declaration index of tail, head index); boundaries are rotated to
    start at that dart.  Requires a symmetric rotation system.
    """
    pos: Dict[str, Dict[str, int]] = {
        vid: {u: i for i, u in enumerate(rot)} for vid, rot in zip(d.vertex_ids, d.rotations)
    }

    def successor(dart: Dart) -> Dart:
        v = dart_head(d, dart)
        j = pos[v][dart.tail]
        return Dart(v, (j + 1) % len(d.rotation(v)))

    def dart_key(dart: Dart) -> Tuple[int, int]:
        return (d.index(dart.tail), dart.head_index)

    all_darts = [Dart(vid, i) for vid in d.vertex_ids for i in range(d.degree(vid))]
    seen = set()
    orbits: List[Tuple[Dart, ...]] = []
    for start in all_darts:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        cur = successor(start)
        while cur != start:
            orbit.append(cur)
            seen.add(cur)
            cur = successor(cur)
        k = min(range(len(orbit)), key=lambda i: dart_key(orbit[i]))
        orbits.append(tuple(orbit[k:] + orbit[:k]))

    orbits.sort(key=lambda b: dart_key(b[0]))
    return FaceSet(faces=tuple(Face(i, b) for i, b in enumerate(orbits)))


def euler_check(d: Diagram, fs: FaceSet) -> bool:
    """True iff |V| - |E| + |F| = 2 (every face an open disc)."""
    return len(d.vertices) - d.num_edges + len(fs.faces) == 2


def classify(d: Diagram, f: Face) -> str:
    if f.degree >= 4:
        return BIG
    n_crossings = sum(1 for v in f.corners if d.is_crossing(v))
    return FALSE_TRIANGLE if n_crossings >= 1 else TRUE_TRIANGLE


def incident_faces(d: Diagram, fs: FaceSet, v: str) -> List[int]:
    """Face ids at v, one per dart leaving v (angle multiplicity counted)."""
    if not d.has_vertex(v):
        raise KeyError(f"unknown vertex {v!r}")
    return [fs.dart_to_face[Dart(v, i)] for i in range(d.degree(v))]


def false_triangle_parity(d: Diagram, fs: FaceSet, v: str) -> int:
    """Number of false 3-faces at a fully triangulated true vertex.

    Under the precondition (every incident face a 3-face) the count is
    always even; callers may assert that.
    """
    classes = [classify(d, fs.faces[fid]) for fid in incident_faces(d, fs, v)]
    if any(cls == BIG for cls in classes):
        raise PreconditionNotTriangulated(f"vertex {v} has an incident big face")
    return sum(1 for cls in classes if cls == FALSE_TRIANGLE)


def angle_corners(d: Diagram, fs: FaceSet, dart: Dart) -> Tuple[str, str]:
    """The two boundary corners adjacent to dart.tail at its face angle.

    Each occurrence of a vertex w on a face boundary corresponds to one
    outgoing dart; the adjacent corners are the head of that dart and the
    tail of the preceding boundary dart.
    """
    fid, p = fs.dart_position[dart]
    boundary = fs.faces[fid].boundary
    prev = boundary[p - 1]
    return (prev.tail, dart_head(d, dart))
