"""Exact impropriety of interval graphs, removal spectra, and construction families."""

from .engine import (
    IMPROPER,
    PROPER,
    ContainmentProfile,
    ImproprietyCertificate,
    IntervalRepresentation,
    NotIntervalGraph,
    consecutive_orderings,
    forced_nesting,
    impropriety,
    is_interval_graph,
    properness,
    ranges,
    realize,
    representation_impropriety,
)
from .graph import (
    Graph,
    canonical_form,
    connected_components,
    delete_vertex,
    from_edge_list,
    from_graph6,
    maximal_cliques,
    to_edge_list,
    to_graph6,
)
from .oracle import oracle_impropriety, oracle_properness
from .spectrum import SpectrumReport, is_critical, removal_spectrum

__version__ = "0.1.0"
