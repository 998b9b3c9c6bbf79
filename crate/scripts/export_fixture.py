"""Export a SnapPy manifold to the horotile manifold file format.

Usage: python3 scripts/export_fixture.py m004 fixtures/m004.tri
"""
import sys

import snappy


def parse_snappea(text):
    lines = [l for l in text.splitlines() if l.strip() and not l.startswith("%")]
    # header: name, solution type, orientability, CS line, cusp counts, cusp lines
    i = 4
    orientable_cusps, _ = (int(x) for x in lines[i].split())
    i += 1 + orientable_cusps
    n = int(lines[i])
    i += 1
    tets = []
    for _ in range(n):
        nb = [int(x) for x in lines[i].split()]
        gl = lines[i + 1].split()
        cu = [int(x) for x in lines[i + 2].split()]
        rows = [[int(x) for x in lines[i + 3 + k].split()] for k in range(4)]
        shape = lines[i + 7].split()
        tets.append((nb, gl, cu, rows[0], rows[2], shape))
        i += 8
    return tets


def main(name, out):
    M = snappy.Manifold(name)
    tets = parse_snappea(M._to_string())
    shapes = M.tetrahedra_shapes("rect")
    w = []
    w.append(f"# {name}, exported from SnapPy {snappy.__version__}")
    w.append(f"num_tetrahedra {len(tets)}")
    w.append("precision_bits 212")
    for k, (nb, gl, cu, mer, lon, _) in enumerate(tets):
        z = shapes[k]
        w.append(f"tetrahedron {k}")
        w.append("neighbors " + " ".join(map(str, nb)))
        w.append("gluings " + " ".join(gl))
        w.append("cusps " + " ".join(map(str, cu)))
        w.append("peripheral")
        for table in (mer, lon):
            for v in range(4):
                w.append("  " + " ".join(f"{x:2d}" for x in table[4 * v:4 * v + 4]))
        w.append(f"shape {float(z.real()):.16g} {float(z.imag()):.16g}")
    with open(out, "w") as f:
        f.write("\n".join(w) + "\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
