//! b-coloring toolkit: graph invariants, precoloring enumeration, precoloring
//! extension, exact and parameterized decision procedures for b-colorings,
//! and generators for structured test instances.

pub mod budget;
pub mod coloring;
pub mod dichotomy;
pub mod dimacs;
pub mod enumerate;
pub mod exact;
pub mod fpt;
pub mod gadgets;
pub mod graph;
pub mod outcome;
pub mod prext;
pub mod select;

pub use budget::{Budget, Meter};
pub use coloring::{
    greedy_extend, is_b_precoloring, is_minimal_b_precoloring, is_proper, switch_colors, union_precolorings,
    verify_certificate, BCertificate, CertificateJson, Color, ColoringError, Precoloring, RecolorOutcome,
    VerificationReport, Violation, UNCOLORED,
};
pub use dichotomy::{solve_k_eq_delta, solve_k_eq_m, solve_k_eq_m_minus_1};
pub use dimacs::{parse_dimacs, write_dimacs, DimacsError};
pub use enumerate::{beta_bound, enumerate_minimal_b_precolorings, enumerate_parallel, enumerate_parallel_with, PrecoloringStream, TupleOrder};
pub use exact::{b_chromatic_number, brute_enumerate_minimal_b_precolorings, solve_exact, solve_exact_with};
pub use fpt::{
    apply_reduction_rule, color_d_injective, kernelize, recolor_component, scattered_set, solve_delta_ell,
    solve_m_param_delta, KernelMode, KernelResult, ScatterSet,
};
pub use gadgets::{
    gen_classic, gen_havet, gen_random, gen_star_pad_delta, gen_star_pad_m, havet_coloring, Classic, GadgetError,
    GadgetInstance,
};
pub use graph::{degree_stats, ell_k, m_degree, partition_dtr, DegreeStats, DtrPartition, Graph, GraphError, Vertex};
pub use outcome::{Algorithm, Answer, ExactMode, SolveError, SolveOptions, SolveOutcome, SolveStats};
pub use prext::{pendant_reduction, prext_bounded, prext_exact, prext_greedy, PrextInstance};
pub use select::select_algorithm;
