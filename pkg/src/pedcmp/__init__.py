"""Pedigree comparison: isomorphism, edit distance, simulation and gadgets."""

from .assignment import Assignment, k_best_assignments, max_weight_assignment
from .bnb import branch_and_bound
from .distance import (DistanceReport, EditPath, PedigreeMatching, apply_edit_path, edit_path,
                       match_distance, well_matched_edges)
from .dp import dp_bounded, dp_gamma_heuristic, recurrence_T, two_generation_exact
from .errors import *  # noqa: F401,F403
from .gadgets import (BipartiteGraph, Tree, bipartite_to_pedigree, cut_paste_distance,
                      leaf_label_gadget, mcip_to_trees, tree_edit_distance,
                      tree_to_monogamous_pedigree)
from .heuristic import random_matching
from .iso import brute_force_isomorphic, gender_topological_order, leaf_labeled_isomorphic
from .pedfile import format_ped, parse_ped, read_ped, write_ped
from .pedigree import (DescendantSplit, Gender, Individual, Pedigree, compatibly_leaf_labeled,
                       descendant_splits, generation_map, is_generational, is_monogamous,
                       leaf_individuals, prune_to_labeled_ancestry, sub_pedigree, validate)
from .simulate import (PerturbConfig, WrightFisherConfig, perturb, perturb_with_log,
                       wright_fisher)

__version__ = "0.1.0"
