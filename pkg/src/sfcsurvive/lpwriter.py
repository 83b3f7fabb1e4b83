"""CPLEX LP text export of the backup provisioning model.

The model minimizes the total backup pool size over integer pool variables
x_<node>_<type> and binary host selectors y_<src>_<type>_<host>. Conditional
rules (pool covers the assigned group, host within the hop bound) are
emitted as big-M rows so any LP-format MILP solver can consume the file.

By default only cells that actually host VNFs get assignment rows; pass
literal_eq2=True to force a host assignment for every (node, type) cell,
including empty ones, which reproduces the unrestricted formulation at the
cost of provisioning backups for nothing.
"""
from .embedding import EmbeddingState
from .plans import SolveConfig
from .topology import PhysicalNetwork


def _objective_terms(n_nodes, n_types):
    return " + ".join(f"x_{i}_{j}" for i in range(n_nodes) for j in range(n_types))


def export_lp(
    net: PhysicalNetwork,
    state: EmbeddingState,
    cfg: SolveConfig,
    path,
    literal_eq2: bool = False,
) -> None:
    """Write the instance as an LP file; raises OSError on I/O failure."""
    with open(path, "w") as fh:
        fh.write(format_lp(net, state, cfg, literal_eq2=literal_eq2))


def format_lp(
    net: PhysicalNetwork,
    state: EmbeddingState,
    cfg: SolveConfig,
    literal_eq2: bool = False,
) -> str:
    n_nodes, n_types = state.m.shape
    M = cfg.big_M
    if M <= int(state.m.max(initial=0)) or M <= cfg.d_max:
        raise ValueError("big_M must exceed every group size and the hop bound")

    if literal_eq2:
        cells = [(i, j) for i in range(n_nodes) for j in range(n_types)]
    else:
        cells = state.active_pairs()

    load = state.load()
    lines = [
        "\\ Shared-backup provisioning model",
        "\\ x_<node>_<type>: integer backup pool size at <node> for <type>",
        "\\ y_<src>_<type>_<host>: 1 iff the <type> group on <src> is backed at <host>",
        f"\\ big-M = {M}, hop bound = {cfg.d_max}, "
        f"assignment rows for {'all' if literal_eq2 else 'occupied'} cells",
        "Minimize",
        f" obj: {_objective_terms(n_nodes, n_types)}",
        "Subject To",
    ]

    for i, j in cells:
        terms = " + ".join(f"y_{i}_{j}_{n}" for n in range(n_nodes))
        lines.append(f" assign_{i}_{j}: {terms} = 1")
    for i, j in cells:
        lines.append(f" selfhost_{i}_{j}: y_{i}_{j}_{i} = 0")
    for i, j in cells:
        m_ij = int(state.m[i, j])
        for n in range(n_nodes):
            lines.append(
                f" pool_{i}_{j}_{n}: x_{n}_{j} - {M} y_{i}_{j}_{n} >= {m_ij - M}"
            )
    for n in range(n_nodes):
        terms = " + ".join(f"x_{n}_{j}" for j in range(n_types))
        lines.append(f" cap_{n}: {terms} <= {int(net.capacity[n] - load[n])}")
    for i, j in cells:
        for n in range(n_nodes):
            d = net.hops(i, n)
            if d is None:
                lines.append(f" hop_{i}_{j}_{n}: y_{i}_{j}_{n} = 0")
            else:
                lines.append(
                    f" hop_{i}_{j}_{n}: {M} y_{i}_{j}_{n} <= {M + cfg.d_max - d}"
                )

    lines.append("Generals")
    for i in range(n_nodes):
        for j in range(n_types):
            lines.append(f" x_{i}_{j}")
    lines.append("Binaries")
    for i, j in cells:
        for n in range(n_nodes):
            lines.append(f" y_{i}_{j}_{n}")
    lines.append("End")
    return "\n".join(lines) + "\n"
