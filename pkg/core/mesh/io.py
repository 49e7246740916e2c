"""
Mesh text format.

Line-oriented, '#' starts a comment::

    nv nt
    x y          (nv lines)
    i j k        (nt lines, 0-based)

Boundary vertices are recomputed on load, never stored.
"""

from pathlib import Path
from typing import Iterator, List, Tuple, Union

from .trimesh import MeshError, TriMesh, build_mesh

PathLike = Union[str, Path]


class MeshFormatError(MeshError):
    """Parse error in a mesh file."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _content_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for line_no, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if fields:
            yield line_no, fields


def parse_mesh(text: str) -> TriMesh:
    """Parse mesh text; see the module docstring for the format."""
    lines = list(_content_lines(text))
    if not lines:
        raise MeshFormatError(1, "missing 'nv nt' header")

    line_no, header = lines[0]
    if len(header) != 2:
        raise MeshFormatError(line_no, "header must be 'nv nt'")
    try:
        nv, nt = int(header[0]), int(header[1])
    except ValueError:
        raise MeshFormatError(line_no, f"non-integer header {' '.join(header)!r}")
    if nv < 0 or nt < 0:
        raise MeshFormatError(line_no, "negative counts in header")

    body = lines[1:]
    if len(body) != nv + nt:
        last = body[-1][0] if body else line_no
        raise MeshFormatError(last, f"header announces {nv} vertices and {nt} triangles "
                                    f"but the file holds {len(body)} data lines")

    vertices = []
    for line_no, fields in body[:nv]:
        if len(fields) != 2:
            raise MeshFormatError(line_no, "vertex line must be 'x y'")
        try:
            vertices.append((float(fields[0]), float(fields[1])))
        except ValueError:
            raise MeshFormatError(line_no, f"bad coordinate {' '.join(fields)!r}")

    triangles = []
    for line_no, fields in body[nv:]:
        if len(fields) != 3:
            raise MeshFormatError(line_no, "triangle line must be 'i j k'")
        try:
            tri = tuple(int(f) for f in fields)
        except ValueError:
            raise MeshFormatError(line_no, f"bad vertex index {' '.join(fields)!r}")
        for idx in tri:
            if not 0 <= idx < nv:
                raise MeshFormatError(line_no, f"index out of range: {idx} (vertex count {nv})")
        triangles.append(tri)

    return build_mesh(vertices, triangles)


def format_mesh(mesh: TriMesh) -> str:
    """Serialize with shortest round-tripping float representations."""
    out = [f"{mesh.n_vertices} {mesh.n_triangles}"]
    out.extend(f"{x!r} {y!r}" for x, y in mesh.vertices.tolist())
    out.extend(f"{i} {j} {k}" for i, j, k in mesh.triangles.tolist())
    return "\n".join(out) + "\n"


def load_mesh(path: PathLike) -> TriMesh:
    """Read a mesh file."""
    return parse_mesh(Path(path).read_text(encoding="utf-8"))


def save_mesh(mesh: TriMesh, path: PathLike) -> None:
    """Write a mesh file."""
    Path(path).write_text(format_mesh(mesh), encoding="utf-8")
