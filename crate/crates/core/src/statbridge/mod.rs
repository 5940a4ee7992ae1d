//! Statistical read-outs of the envelope: Student-T conversion, comparison
//! with classical bounds, critical-value tables and plot data.
//!
//! Exact values stay [`Dyadic`](crate::Dyadic); floats only fill the comparison columns.

mod normal;
mod tables;
mod tstat;

pub use normal::{erfc, gaussian_upper_tail};
pub use tables::{
    comparison_table, critical_table, default_grid, figure_data, write_comparison_csv,
    write_critical_csv, write_figure_csv, ComparisonRow, CriticalRow, CriticalTable, Figure,
    FigurePoint, DEFAULT_GRID,
};
pub use tstat::{hoeffding_bound, s_to_t, t_to_s};
