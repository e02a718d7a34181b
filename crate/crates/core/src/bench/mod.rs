//! Benchmark harness: dataset I/O, algorithm runs, rank aggregation,
//! complexity timing and plot-ready emissions.

pub mod complexity;
pub mod io;
pub mod pca;
pub mod rank;
pub mod report;
pub mod run;

pub use complexity::{
    fit_exponents, gaussian_matrix, measure_complexity, ComplexityFit, ComplexityOptions,
    TimingCell, TimingGrid,
};
pub use io::{
    load_csv_dataset, load_dataset_dir, read_csv_dataset, write_csv_dataset, write_dataset,
    NamedDataset, DEFAULT_LABEL_COLUMN,
};
pub use pca::{pca_project_2d, write_pca_csv, Projection2d};
pub use rank::{rank_algorithms, rank_descending, RankMode, RankRow, RankTable};
pub use report::{build_report, DetectionReport};
pub use run::{
    evaluate, run_benchmark, Algorithm, AlgorithmSpec, MetricEntry, MetricTable, BASELINE_TAU,
};
