//! LaTeX reports. Tables are plain `tabular` environments inside a minimal document; the
//! best cell of each row uses `gray95` (dark) and the second best `gray25` (light).

use std::fmt::Write;

use super::grid::IndicatorGrid;
use super::summary::SummaryRecord;
use crate::error::{Error, Result};
use crate::stats::{
    friedman, friedman_aligned, friedman_posthoc, iqr, median, quade, wilcoxon_rank_sum,
    Adjustment, TestReport,
};

const PREAMBLE: &str = "\\documentclass{article}
\\usepackage[table]{xcolor}
\\usepackage{amssymb}
\\usepackage{amsmath}
\\definecolor{gray95}{gray}{0.65}
\\definecolor{gray25}{gray}{0.85}
\\begin{document}
";
const END: &str = "\\end{document}\n";

/// Scientific notation with a two-decimal mantissa and a signed two-digit exponent,
/// e.g. `1.29e-02`.
pub fn sci(value: f64) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let s = format!("{value:.2e}");
    let (mantissa, exp) = s.split_once('e').unwrap_or((&s, "0"));
    let exp: i32 = exp.parse().unwrap_or(0);
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Cell text `median_{iqr}`.
pub fn median_iqr_cell(sample: &[f64]) -> String {
    format!("{}_{{{}}}", sci(median(sample)), sci(iqr(sample)))
}

/// Indices of the best and second-best entries under the orientation; ties resolve to the
/// leftmost column.
pub fn best_two(values: &[f64], larger_is_better: bool) -> (usize, Option<usize>) {
    let better = |a: f64, b: f64| if larger_is_better { a > b } else { a < b };
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        if better(values[a], values[b]) {
            std::cmp::Ordering::Less
        } else if better(values[b], values[a]) {
            std::cmp::Ordering::Greater
        } else {
            a.cmp(&b)
        }
    });
    (order[0], order.get(1).copied())
}

fn escape(s: &str) -> String {
    s.replace('_', "\\_").replace('&', "\\&").replace('%', "\\%").replace('#', "\\#")
}

fn header_row(out: &mut String, first: &str, names: &[String]) {
    let _ = write!(out, "{first}");
    for n in names {
        let _ = write!(out, " & {}", escape(n));
    }
    out.push_str(" \\\\\n\\hline\n");
}

/// Median and IQR per problem (rows) and algorithm (columns).
pub fn median_iqr_table(records: &[SummaryRecord], indicator: &str) -> Result<String> {
    let grid = IndicatorGrid::from_records(records, indicator)?;
    let k = grid.algorithms.len();
    let mut out = String::from(PREAMBLE);
    let _ = writeln!(out, "\\begin{{table}}[!htp]\n\\centering");
    let _ = writeln!(
        out,
        "\\caption{{Median and interquartile range of the {} indicator}}",
        escape(indicator)
    );
    let _ = writeln!(out, "\\begin{{tabular}}{{l|{}}}\n\\hline", "l".repeat(k));
    header_row(&mut out, "", &grid.algorithms);
    for (p, problem) in grid.problems.iter().enumerate() {
        let samples = (0..k)
            .map(|a| grid.sample(a, p))
            .collect::<Result<Vec<_>>>()?;
        let medians: Vec<f64> = samples.iter().map(|s| median(s)).collect();
        let (best, second) = best_two(&medians, grid.larger_is_better);
        let _ = write!(out, "{}", escape(problem));
        for (a, s) in samples.iter().enumerate() {
            let shade = if a == best {
                "\\cellcolor{gray95}"
            } else if Some(a) == second {
                "\\cellcolor{gray25}"
            } else {
                ""
            };
            let _ = write!(out, " & {shade}${}$", median_iqr_cell(s));
        }
        out.push_str(" \\\\\n");
    }
    out.push_str("\\hline\n\\end{tabular}\n\\end{table}\n");
    out.push_str(END);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    /// No significant difference.
    Equivalent,
    /// The column algorithm is significantly better.
    ColumnBetter,
    /// The row algorithm is significantly better.
    RowBetter,
}

impl Symbol {
    pub fn latex(self) -> &'static str {
        match self {
            Symbol::Equivalent => "\\text{--}",
            Symbol::ColumnBetter => "\\triangledown",
            Symbol::RowBetter => "\\blacktriangle",
        }
    }

    pub fn glyph(self) -> char {
        match self {
            Symbol::Equivalent => '–',
            Symbol::ColumnBetter => '▽',
            Symbol::RowBetter => '▲',
        }
    }
}

/// Symbol for one problem given the row and column samples. Which side is better comes
/// from the medians under the orientation.
pub fn pair_symbol(row: &[f64], col: &[f64], alpha: f64, larger_is_better: bool) -> Result<Symbol> {
    let p = wilcoxon_rank_sum(row, col)?.p_value;
    if p >= alpha {
        return Ok(Symbol::Equivalent);
    }
    let (mr, mc) = (median(row), median(col));
    let row_better = if larger_is_better { mr > mc } else { mr < mc };
    Ok(if row_better {
        Symbol::RowBetter
    } else if mr == mc {
        Symbol::Equivalent
    } else {
        Symbol::ColumnBetter
    })
}

/// Upper-triangular grid: `grid[i][j - i - 1]` holds the per-problem symbols for row
/// algorithm `i` against column algorithm `j > i`.
pub fn wilcoxon_symbols(grid: &IndicatorGrid, alpha: f64) -> Result<Vec<Vec<Vec<Symbol>>>> {
    let k = grid.algorithms.len();
    if k < 2 {
        return Err(Error::Data(format!(
            "Wilcoxon table needs at least 2 algorithms, found {k}"
        )));
    }
    let mut out = Vec::with_capacity(k - 1);
    for i in 0..k - 1 {
        let mut row = Vec::new();
        for j in i + 1..k {
            let mut symbols = Vec::with_capacity(grid.problems.len());
            for p in 0..grid.problems.len() {
                let (a, b) = (grid.sample(i, p)?, grid.sample(j, p)?);
                if a.len() < 2 || b.len() < 2 {
                    return Err(Error::Data(format!(
                        "Wilcoxon table needs at least 2 runs per cell ({} / {} on {})",
                        grid.algorithms[i], grid.algorithms[j], grid.problems[p]
                    )));
                }
                symbols.push(pair_symbol(&a, &b, alpha, grid.larger_is_better)?);
            }
            row.push(symbols);
        }
        out.push(row);
    }
    Ok(out)
}

pub fn wilcoxon_symbol_table(records: &[SummaryRecord], indicator: &str, alpha: f64) -> Result<String> {
    let grid = IndicatorGrid::from_records(records, indicator)?;
    let symbols = wilcoxon_symbols(&grid, alpha)?;
    let k = grid.algorithms.len();
    let mut out = String::from(PREAMBLE);
    let _ = writeln!(out, "\\begin{{table}}[!htp]\n\\centering");
    let _ = writeln!(
        out,
        "\\caption{{Wilcoxon rank-sum results of the {} indicator (problems: {}; alpha = {alpha})}}",
        escape(indicator),
        escape(&grid.problems.join(", "))
    );
    let _ = writeln!(out, "\\begin{{tabular}}{{l|{}}}\n\\hline", "c".repeat(k - 1));
    header_row(&mut out, "", &grid.algorithms[1..]);
    for (i, row) in symbols.iter().enumerate() {
        let _ = write!(out, "{}", escape(&grid.algorithms[i]));
        for _ in 0..i {
            out.push_str(" & ");
        }
        for cell in row {
            let text: Vec<&str> = cell.iter().map(|s| s.latex()).collect();
            let _ = write!(out, " & ${}$", text.join("\\,"));
        }
        out.push_str(" \\\\\n");
    }
    out.push_str("\\hline\n\\end{tabular}\n\\end{table}\n");
    out.push_str(END);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankTest {
    Friedman,
    FriedmanAligned,
    Quade,
}

impl RankTest {
    pub fn run(self, grid: &IndicatorGrid) -> Result<TestReport> {
        let m = grid.median_matrix()?;
        match self {
            RankTest::Friedman => friedman(&m),
            RankTest::FriedmanAligned => friedman_aligned(&m),
            RankTest::Quade => quade(&m),
        }
    }
}

/// Average ranks per algorithm plus the statistic and p-value, computed on per-problem medians.
pub fn rank_test_table(records: &[SummaryRecord], indicator: &str, test: RankTest) -> Result<String> {
    let grid = IndicatorGrid::from_records(records, indicator)?;
    let report = test.run(&grid)?;
    let mut out = String::from(PREAMBLE);
    let _ = writeln!(out, "\\begin{{table}}[!htp]\n\\centering");
    let _ = writeln!(
        out,
        "\\caption{{{} test on the {} indicator: statistic {:.6}, p-value {}}}",
        report.test,
        escape(indicator),
        report.statistic,
        sci(report.p_value)
    );
    out.push_str("\\begin{tabular}{l|c}\n\\hline\nAlgorithm & Average rank \\\\\n\\hline\n");
    for (a, r) in grid.algorithms.iter().zip(&report.average_ranks) {
        let _ = writeln!(out, "{} & {r:.4} \\\\", escape(a));
    }
    out.push_str("\\hline\n\\end{tabular}\n\\end{table}\n");
    out.push_str(END);
    Ok(out)
}

/// Friedman post-hoc comparisons with adjusted p-values. With a control every other
/// algorithm is compared against it, otherwise all pairs are.
pub fn posthoc_table(
    records: &[SummaryRecord],
    indicator: &str,
    control: Option<&str>,
    method: Adjustment,
) -> Result<String> {
    let grid = IndicatorGrid::from_records(records, indicator)?;
    let control = control.map(|c| grid.algorithm_index(c)).transpose()?;
    let comparisons = friedman_posthoc(&grid.median_matrix()?, control, method)?;
    let mut out = String::from(PREAMBLE);
    let _ = writeln!(out, "\\begin{{table}}[!htp]\n\\centering");
    let _ = writeln!(
        out,
        "\\caption{{Post-hoc comparisons on the {} indicator ({} adjustment)}}",
        escape(indicator),
        escape(method.name())
    );
    out.push_str("\\begin{tabular}{ll|rrr}\n\\hline\n & & $z$ & $p$ & $p_{adj}$ \\\\\n\\hline\n");
    for c in &comparisons {
        let _ = writeln!(
            out,
            "{} & {} & {:.4} & {} & {} \\\\",
            escape(&grid.algorithms[c.first]),
            escape(&grid.algorithms[c.second]),
            c.z,
            sci(c.p_value),
            sci(c.adjusted)
        );
    }
    out.push_str("\\hline\n\\end{tabular}\n\\end{table}\n");
    out.push_str(END);
    Ok(out)
}
