//! Experiment orchestration, the summary file and report artifacts.

mod experiment;
mod grid;
mod plots;
mod report;
mod summary;
mod svg;
mod tables;

pub use experiment::{run_experiment, ExperimentPlan, ExperimentReport, RunFailure};
pub use grid::IndicatorGrid;
pub use plots::{boxplot_svg, cd_groups, front_plot_svg, posterior_plot_svg, BoxStats, CdDiagram};
pub use report::{paired_differences, write_stats_artifacts, Artifact, StatsOptions};
pub use summary::{read_summary, read_summary_from, write_summary, write_summary_to, SummaryRecord, SUMMARY_HEADER};
pub use tables::{
    best_two, median_iqr_cell, median_iqr_table, pair_symbol, posthoc_table, rank_test_table, sci,
    wilcoxon_symbol_table, wilcoxon_symbols, RankTest, Symbol,
};
