"""Builders for the standard module families and nilpotent algebra models.

Names accepted by `catalog_module` (either as "so(3)" or ("so", 3)):

    mat(d,e) gl(d) sl(d) so(d) sp(2m) sym(d) n(d) tr(d) diag(d) band(r)
    zero(d,e) ex_unbounded ex_elliptic ex_non_lie L_{d,i}

The L_{d,i} entries are the nilpotent Lie algebras of dimension <= 5 in
de Graaf's numbering, realized as explicit integer matrix algebras.  Two
catalog entries (ex_non_lie and L_{5,6}) carry fractional coefficients in
their usual presentation; the generators in question are stored multiplied
by 2, which spans the same module over Z_p for every odd p.  Their validity
records exclude p = 2.
"""

from __future__ import annotations



from .errors import InputError
from .intmat import IntMatrix
from .module import MatrixModule, direct_sum


def _unit(d, e, i, j, v=1):
    return IntMatrix.unit(d, e, i, j, v)


def _sum_units(d, e, positions):
    m = [[0] * e for _ in range(d)]
    for entry in positions:
        i, j, *rest = entry
        m[i][j] += rest[0] if rest else 1
    return IntMatrix(m)


def mat_module(d: int, e: int) -> MatrixModule:
    basis = [_unit(d, e, i, j) for i in range(d) for j in range(e)]
    return MatrixModule(d, e, basis, f"mat({d},{e})")


def gl_module(d: int) -> MatrixModule:
    m = mat_module(d, d)
    m.label = f"gl({d})"
    return m


def sl_module(d: int) -> MatrixModule:
    basis = [_unit(d, d, i, j) for i in range(d) for j in range(d) if i != j]
    basis += [
        _sum_units(d, d, [(i, i, 1), (i + 1, i + 1, -1)]) for i in range(d - 1)
    ]
    return MatrixModule(d, d, basis, f"sl({d})")


def so_module(d: int) -> MatrixModule:
    basis = [
        _sum_units(d, d, [(i, j, 1), (j, i, -1)])
        for i in range(d)
        for j in range(i + 1, d)
    ]
    return MatrixModule(d, d, basis, f"so({d})")


def sym_module(d: int) -> MatrixModule:
    basis = [_unit(d, d, i, i) for i in range(d)]
    basis += [
        _sum_units(d, d, [(i, j, 1), (j, i, 1)])
        for i in range(d)
        for j in range(i + 1, d)
    ]
    return MatrixModule(d, d, basis, f"sym({d})")


def sp_module(size: int) -> MatrixModule:
    """Symplectic algebra in the 2m x 2m block form [[a, b], [c, -a^T]]."""
    if size % 2 or size <= 0:
        raise InputError("sp requires a positive even size")
    m = size // 2
    basis = []
    for i in range(m):
        for j in range(m):
            basis.append(_sum_units(size, size, [(i, j, 1), (m + j, m + i, -1)]))
    for i in range(m):
        basis.append(_unit(size, size, i, m + i))
        basis.append(_unit(size, size, m + i, i))
    for i in range(m):
        for j in range(i + 1, m):
            basis.append(_sum_units(size, size, [(i, m + j, 1), (j, m + i, 1)]))
            basis.append(_sum_units(size, size, [(m + i, j, 1), (m + j, i, 1)]))
    return MatrixModule(size, size, basis, f"sp({size})")


def n_module(d: int) -> MatrixModule:
    basis = [_unit(d, d, i, j) for i in range(d) for j in range(i + 1, d)]
    return MatrixModule(d, d, basis, f"n({d})")


def tr_module(d: int) -> MatrixModule:
    basis = [_unit(d, d, i, j) for i in range(d) for j in range(i, d)]
    return MatrixModule(d, d, basis, f"tr({d})")


def diag_module(d: int) -> MatrixModule:
    basis = [_unit(d, d, i, i) for i in range(d)]
    return MatrixModule(d, d, basis, f"diag({d})")


def band_module(r: int) -> MatrixModule:
    """Constant-rank band module in Mat_{(2r-1) x r}: column j carries x_1..x_r
    shifted down by j."""
    if r < 1:
        raise InputError("band parameter must be >= 1")
    d, e = 2 * r - 1, r
    basis = []
    for k in range(r):
        basis.append(_sum_units(d, e, [(k + j, j, 1) for j in range(r)]))
    return MatrixModule(d, e, basis, f"band({r})")


def zero_module(d: int, e: int) -> MatrixModule:
    return MatrixModule(d, e, [], f"zero({d},{e})")


def ex_unbounded_module() -> MatrixModule:
    """Symmetric-shape 3x3 module [[a,b,a],[b,c,d],[a,d,c]] of dimension 4."""
    basis = [
        _sum_units(3, 3, [(0, 0), (0, 2), (2, 0)]),
        _sum_units(3, 3, [(0, 1), (1, 0)]),
        _sum_units(3, 3, [(1, 1), (2, 2)]),
        _sum_units(3, 3, [(1, 2), (2, 1)]),
    ]
    return MatrixModule(3, 3, basis, "ex_unbounded")


def ex_elliptic_module() -> MatrixModule:
    """3x3 module [[z,x,y],[x,z,0],[y,0,x]] whose counting data involves the
    curve Y^2 = X^3 - X."""
    basis = [
        _sum_units(3, 3, [(0, 1), (1, 0), (2, 2)]),
        _sum_units(3, 3, [(0, 2), (2, 0)]),
        _sum_units(3, 3, [(0, 0), (1, 1)]),
    ]
    return MatrixModule(3, 3, basis, "ex_elliptic")


def ex_non_lie_module() -> MatrixModule:
    """A 5-dimensional module of 6x6 nilpotent matrices that is not a Lie algebra.

    Generators two and three are stored doubled to clear halves; valid p != 2.
    """
    basis = [
        _sum_units(6, 6, [(0, 5), (1, 2), (2, 3), (3, 4)]),
        _sum_units(6, 6, [(0, 1, 2), (1, 3, 1), (4, 5, 2)]),
        _sum_units(6, 6, [(0, 2, -2), (1, 4, -1), (3, 5, 2)]),
        _unit(6, 6, 2, 5),
        _unit(6, 6, 1, 5),
    ]
    return MatrixModule(6, 6, basis, "ex_non_lie")


# -- nilpotent Lie algebra models (dimension <= 5) -----------------------

def _l33_heisenberg():
    return n_module(3)


def _abelian_rowblock(d, count):
    """`count` commuting matrix units e_{0,j} inside Mat_d; all products vanish."""
    return MatrixModule(
        d, d, [_unit(d, d, 0, j) for j in range(1, count + 1)], ""
    )


_ALGEBRA_BUILDERS = {}


def _algebra(key):
    def reg(fn):
        _ALGEBRA_BUILDERS[key] = fn
        return fn

    return reg


@_algebra("L_{1,1}")
def _l11():
    return MatrixModule(2, 2, [_unit(2, 2, 0, 1)], "L_{1,1}")


@_algebra("L_{2,1}")
def _l21():
    return MatrixModule(3, 3, [_unit(3, 3, 0, 1), _unit(3, 3, 0, 2)], "L_{2,1}")


@_algebra("L_{3,1}")
def _l31():
    m = _abelian_rowblock(4, 3)
    m.label = "L_{3,1}"
    return m


@_algebra("L_{3,2}")
def _l32():
    m = n_module(3)
    m.label = "L_{3,2}"
    return m


@_algebra("L_{4,1}")
def _l41():
    m = _abelian_rowblock(5, 4)
    m.label = "L_{4,1}"
    return m


@_algebra("L_{4,2}")
def _l42():
    m = direct_sum(n_module(3), MatrixModule(2, 2, [_unit(2, 2, 0, 1)], ""))
    m.label = "L_{4,2}"
    return m


@_algebra("L_{4,3}")
def _l43():
    basis = [
        _sum_units(4, 4, [(0, 1), (1, 2), (2, 3)]),
        _unit(4, 4, 0, 1),
        _unit(4, 4, 0, 2),
        _unit(4, 4, 0, 3),
    ]
    return MatrixModule(4, 4, basis, "L_{4,3}")


@_algebra("L_{5,1}")
def _l51():
    basis = [
        _unit(5, 5, 0, 2),
        _unit(5, 5, 0, 3),
        _unit(5, 5, 0, 4),
        _unit(5, 5, 1, 2),
        _unit(5, 5, 1, 3),
    ]
    return MatrixModule(5, 5, basis, "L_{5,1}")


@_algebra("L_{5,2}")
def _l52():
    two_dim = MatrixModule(3, 3, [_unit(3, 3, 0, 2), _unit(3, 3, 1, 2)], "")
    m = direct_sum(n_module(3), two_dim)
    m.label = "L_{5,2}"
    return m


@_algebra("L_{5,3}")
def _l53():
    basis = [
        _sum_units(5, 5, [(0, 1), (1, 2), (2, 3)]),
        _unit(5, 5, 0, 1),
        _unit(5, 5, 0, 2),
        _unit(5, 5, 0, 3),
        _unit(5, 5, 0, 4),
    ]
    return MatrixModule(5, 5, basis, "L_{5,3}")


@_algebra("L_{5,4}")
def _l54():
    basis = [
        _unit(4, 4, 0, 1),
        _unit(4, 4, 1, 3),
        _unit(4, 4, 0, 2),
        _unit(4, 4, 2, 3),
        _unit(4, 4, 0, 3),
    ]
    return MatrixModule(4, 4, basis, "L_{5,4}")


@_algebra("L_{5,5}")
def _l55():
    basis = [
        _sum_units(5, 5, [(0, 1), (2, 4)]),
        _sum_units(5, 5, [(1, 2), (3, 4)]),
        _sum_units(5, 5, [(0, 2), (1, 4, -1)]),
        _unit(5, 5, 0, 3),
        _unit(5, 5, 0, 4),
    ]
    return MatrixModule(5, 5, basis, "L_{5,5}")


@_algebra("L_{5,6}")
def _l56():
    basis = [
        _sum_units(5, 5, [(0, 1), (1, 2), (2, 3)]),
        _sum_units(5, 5, [(0, 2), (3, 4, 2)]),
        _sum_units(5, 5, [(0, 3, -1), (2, 4, 2)]),
        _unit(5, 5, 1, 4),
        _unit(5, 5, 0, 4),
    ]
    return MatrixModule(5, 5, basis, "L_{5,6}")


@_algebra("L_{5,7}")
def _l57():
    basis = [
        _sum_units(5, 5, [(0, 1), (1, 2), (2, 3), (3, 4)]),
        _unit(5, 5, 0, 1),
        _unit(5, 5, 0, 2),
        _unit(5, 5, 0, 3),
        _unit(5, 5, 0, 4),
    ]
    return MatrixModule(5, 5, basis, "L_{5,7}")


@_algebra("L_{5,8}")
def _l58():
    basis = [
        _unit(4, 4, 0, 1),
        _unit(4, 4, 1, 2),
        _unit(4, 4, 1, 3),
        _unit(4, 4, 0, 2),
        _unit(4, 4, 0, 3),
    ]
    return MatrixModule(4, 4, basis, "L_{5,8}")


@_algebra("L_{5,9}")
def _l59():
    basis = [
        _sum_units(6, 6, [(0, 1), (2, 3), (3, 4)]),
        _sum_units(6, 6, [(0, 2), (3, 5)]),
        _sum_units(6, 6, [(0, 3, -1), (2, 5)]),
        _unit(6, 6, 0, 4),
        _unit(6, 6, 0, 5),
    ]
    return MatrixModule(6, 6, basis, "L_{5,9}")


def _parse_key(name):
    name = name.strip()
    if name.endswith(")") and "(" in name and not name.startswith("L_{"):
        head, _, args = name.partition("(")
        args = args[:-1].strip()
        try:
            params = tuple(int(v) for v in args.split(",")) if args else ()
        except ValueError as exc:
            raise InputError(f"bad parameters in catalog key {name!r}") from exc
        return head.strip(), params
    return name, ()


_FAMILIES = {
    "mat": (mat_module, 2),
    "gl": (gl_module, 1),
    "sl": (sl_module, 1),
    "so": (so_module, 1),
    "sp": (sp_module, 1),
    "sym": (sym_module, 1),
    "n": (n_module, 1),
    "tr": (tr_module, 1),
    "diag": (diag_module, 1),
    "band": (band_module, 1),
    "zero": (zero_module, 2),
}

_FIXED = {
    "ex_unbounded": ex_unbounded_module,
    "ex_elliptic": ex_elliptic_module,
    "ex_non_lie": ex_non_lie_module,
}


def catalog_module(name: str, *params: int) -> MatrixModule:
    """Build a named module, e.g. catalog_module("so", 3) or catalog_module("so(3)")."""
    if not params:
        name, params = _parse_key(name)
    if name in _FIXED:
        if params:
            raise InputError(f"{name} takes no parameters")
        return _FIXED[name]()
    if name in _ALGEBRA_BUILDERS:
        if params:
            raise InputError(f"{name} takes no parameters")
        return _ALGEBRA_BUILDERS[name]()
    if name in _FAMILIES:
        builder, arity = _FAMILIES[name]
        if len(params) != arity:
            raise InputError(f"{name} expects {arity} parameter(s), got {len(params)}")
        if any(v < 0 for v in params):
            raise InputError(f"negative parameter for {name}")
        return builder(*params)
    raise InputError(f"unknown catalog name {name!r}")


def algebra_keys() -> tuple[str, ...]:
    return tuple(sorted(_ALGEBRA_BUILDERS))
