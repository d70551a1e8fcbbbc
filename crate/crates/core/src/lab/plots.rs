//! SVG figures: boxplots, critical-distance diagrams, posterior simplex and fronts.

use super::grid::IndicatorGrid;
use super::summary::SummaryRecord;
use super::svg::{Scale, Svg};
use crate::error::{Error, Result};
use crate::indicators::Front;
use crate::stats::{critical_distance, posterior_barycentric_points, quantile, BayesianOutcome, PosteriorTriple};

/// Five-number summary with 1.5 IQR whiskers.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxStats {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub outliers: Vec<f64>,
}

impl BoxStats {
    pub fn new(sample: &[f64]) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::Data("boxplot of an empty sample".into()));
        }
        let (q1, median, q3) = (quantile(sample, 0.25), quantile(sample, 0.5), quantile(sample, 0.75));
        let fence = 1.5 * (q3 - q1);
        let (lo, hi) = (q1 - fence, q3 + fence);
        let inside: Vec<f64> = sample.iter().copied().filter(|v| (lo..=hi).contains(v)).collect();
        let whisker_low = inside.iter().copied().fold(q1, f64::min);
        let whisker_high = inside.iter().copied().fold(q3, f64::max);
        let outliers = sample.iter().copied().filter(|v| !(lo..=hi).contains(v)).collect();
        Ok(BoxStats {
            q1,
            median,
            q3,
            whisker_low,
            whisker_high,
            outliers,
        })
    }
}

/// One box per algorithm for `problem`.
pub fn boxplot_svg(records: &[SummaryRecord], indicator: &str, problem: &str) -> Result<String> {
    let grid = IndicatorGrid::from_records(records, indicator)?;
    let p = grid.problem_index(problem)?;
    let boxes = (0..grid.algorithms.len())
        .map(|a| grid.sample(a, p).and_then(|s| BoxStats::new(&s)))
        .collect::<Result<Vec<_>>>()?;
    let lo = boxes
        .iter()
        .flat_map(|b| b.outliers.iter().copied().chain([b.whisker_low]))
        .fold(f64::INFINITY, f64::min);
    let hi = boxes
        .iter()
        .flat_map(|b| b.outliers.iter().copied().chain([b.whisker_high]))
        .fold(f64::NEG_INFINITY, f64::max);
    let slot = 90.0;
    let (left, top, plot_h) = (70.0, 40.0, 300.0);
    let width = left + slot * boxes.len() as f64 + 20.0;
    let height = top + plot_h + 60.0;
    let y = Scale::padded(lo, hi, top + plot_h, top);
    let mut svg = Svg::new(width, height);
    svg.text(width / 2.0, 24.0, "middle", 14.0, "title", &format!("{indicator} on {problem}"));
    svg.line(left, top, left, top + plot_h, "axis", "black", 1.0);
    for v in [lo, (lo + hi) / 2.0, hi].iter() {
        let yy = y.map(*v);
        svg.line(left - 4.0, yy, left, yy, "tick", "black", 1.0);
        svg.text(left - 6.0, yy + 4.0, "end", 10.0, "tick-label", &format!("{v:.3e}"));
    }
    for (i, (b, name)) in boxes.iter().zip(&grid.algorithms).enumerate() {
        let cx = left + slot * (i as f64 + 0.5);
        let half = slot * 0.3;
        svg.line(cx, y.map(b.whisker_low), cx, y.map(b.q1), "whisker", "black", 1.0);
        svg.line(cx, y.map(b.q3), cx, y.map(b.whisker_high), "whisker", "black", 1.0);
        for w in [b.whisker_low, b.whisker_high] {
            svg.line(cx - half / 2.0, y.map(w), cx + half / 2.0, y.map(w), "whisker-cap", "black", 1.0);
        }
        let (yt, yb) = (y.map(b.q3), y.map(b.q1));
        svg.rect(cx - half, yt, 2.0 * half, (yb - yt).max(0.0), "box", "#c6dbef");
        svg.line(cx - half, y.map(b.median), cx + half, y.map(b.median), "median", "#d62728", 2.0);
        for o in &b.outliers {
            svg.circle_with(cx, y.map(*o), 3.0, "outlier", r#"fill="none" stroke="black""#);
        }
        svg.text(cx, top + plot_h + 20.0, "middle", 11.0, "label", name);
    }
    Ok(svg.finish())
}

/// Average ranks and critical-distance groups.
#[derive(Debug, Clone, PartialEq)]
pub struct CdDiagram {
    pub algorithms: Vec<String>,
    pub ranks: Vec<f64>,
    pub cd: f64,
    /// Maximal sets of algorithms (indices into `algorithms`) whose rank spread is below `cd`,
    /// listed only when they hold at least two algorithms.
    pub groups: Vec<Vec<usize>>,
}

impl CdDiagram {
    pub fn from_records(records: &[SummaryRecord], indicator: &str, alpha: f64) -> Result<Self> {
        let grid = IndicatorGrid::from_records(records, indicator)?;
        let m = grid.median_matrix()?;
        let cd = critical_distance(m.n_algorithms(), m.n_problems(), alpha)?;
        Ok(Self::new(grid.algorithms.clone(), m.average_ranks(), cd))
    }

    pub fn new(algorithms: Vec<String>, ranks: Vec<f64>, cd: f64) -> Self {
        let groups = cd_groups(&ranks, cd);
        CdDiagram {
            algorithms,
            ranks,
            cd,
            groups,
        }
    }

    pub fn render(&self) -> String {
        let k = self.algorithms.len();
        let (left, right, axis_y) = (60.0, 540.0, 70.0);
        let width = 600.0;
        let height = axis_y + 40.0 + 22.0 * k as f64 + 12.0 * self.groups.len() as f64;
        let x = Scale::new(1.0, k.max(2) as f64, left, right);
        let mut svg = Svg::new(width, height);
        svg.line(left, axis_y, right, axis_y, "axis", "black", 1.0);
        for r in 1..=k.max(2) {
            let xx = x.map(r as f64);
            svg.line(xx, axis_y - 5.0, xx, axis_y, "tick", "black", 1.0);
            svg.text(xx, axis_y - 9.0, "middle", 11.0, "tick-label", &r.to_string());
        }
        // critical distance legend
        svg.line(left, 22.0, left + (x.map(1.0 + self.cd) - left), 22.0, "cd", "black", 2.0);
        svg.text(left, 16.0, "start", 11.0, "cd-label", &format!("CD = {:.3}", self.cd));
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| self.ranks[a].total_cmp(&self.ranks[b]));
        for (row, &i) in order.iter().enumerate() {
            let xx = x.map(self.ranks[i]);
            let yy = axis_y + 30.0 + 22.0 * row as f64;
            svg.line(xx, axis_y, xx, yy, "marker", "black", 1.0);
            svg.circle(xx, axis_y, 3.0, "algorithm", "black");
            let (anchor, tx) = if row < (k + 1) / 2 { ("end", left - 4.0) } else { ("start", right + 4.0) };
            svg.line(xx, yy, tx, yy, "marker", "black", 1.0);
            svg.text(
                tx,
                yy + 4.0,
                anchor,
                11.0,
                "algorithm-label",
                &format!("{} ({:.2})", self.algorithms[i], self.ranks[i]),
            );
        }
        for (g, members) in self.groups.iter().enumerate() {
            let lo = members.iter().map(|&i| self.ranks[i]).fold(f64::INFINITY, f64::min);
            let hi = members.iter().map(|&i| self.ranks[i]).fold(f64::NEG_INFINITY, f64::max);
            let yy = axis_y + 12.0 + 6.0 * g as f64;
            svg.line(x.map(lo) - 3.0, yy, x.map(hi) + 3.0, yy, "group", "black", 4.0);
        }
        svg.finish()
    }
}

/// Groups of algorithms whose average ranks differ by less than `cd`.
pub fn cd_groups(ranks: &[f64], cd: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..ranks.len()).collect();
    order.sort_by(|&a, &b| ranks[a].total_cmp(&ranks[b]));
    let mut spans: Vec<(usize, usize)> = Vec::new();
    for s in 0..order.len() {
        let mut e = s;
        while e + 1 < order.len() && ranks[order[e + 1]] - ranks[order[s]] < cd {
            e += 1;
        }
        if e > s && !spans.iter().any(|&(a, b)| a <= s && e <= b) {
            spans.push((s, e));
        }
    }
    spans.into_iter().map(|(s, e)| order[s..=e].to_vec()).collect()
}

/// Region probabilities plus a barycentric scatter of (at most `max_points`) draws.
pub fn posterior_plot_svg(
    outcome: &BayesianOutcome,
    left_label: &str,
    right_label: &str,
    max_points: usize,
) -> String {
    let triple: PosteriorTriple = outcome.triple;
    let (side, ox, oy) = (400.0, 60.0, 400.0);
    let map = |p: [f64; 2]| (ox + p[0] * side, oy - p[1] * side);
    let mut svg = Svg::new(520.0, 520.0);
    let l = map([0.0, 0.0]);
    let r = map([1.0, 0.0]);
    let t = map([0.5, 3.0f64.sqrt() / 2.0]);
    svg.polyline(&[l, r, t, l], "simplex", "black", 1.5);
    let stride = (outcome.draws.len() / max_points.max(1)).max(1);
    let thinned: Vec<[f64; 3]> = outcome.draws.iter().step_by(stride).copied().collect();
    for p in posterior_barycentric_points(&thinned) {
        let (x, y) = map(p);
        svg.circle_with(x, y, 1.2, "draw", r##"fill="#1f77b4" fill-opacity="0.3""##);
    }
    svg.text(l.0, l.1 + 18.0, "middle", 12.0, "vertex", left_label);
    svg.text(r.0, r.1 + 18.0, "middle", 12.0, "vertex", right_label);
    svg.text(t.0, t.1 - 8.0, "middle", 12.0, "vertex", "rope");
    svg.text(
        260.0,
        460.0,
        "middle",
        12.0,
        "caption",
        &format!(
            "P({left_label}) = {:.6}   P(rope) = {:.6}   P({right_label}) = {:.6}",
            triple.p_left, triple.p_rope, triple.p_right
        ),
    );
    svg.text(
        260.0,
        480.0,
        "middle",
        11.0,
        "caption",
        &format!("rope = {}, draws = {}, seed = {}", triple.rope, outcome.draws.len(), outcome.seed),
    );
    svg.finish()
}

/// 2-D scatter, projected 3-D scatter, or parallel coordinates for more objectives. The
/// reference front is drawn underneath in gray and the reference point in red.
pub fn front_plot_svg(front: &Front, reference: Option<&Front>, reference_point: Option<&[f64]>) -> Result<String> {
    let m = front.dim();
    if m < 2 {
        return Err(Error::UnsupportedDimension(format!("cannot plot a front with {m} objective")));
    }
    if let Some(r) = reference {
        if r.dim() != m {
            return Err(Error::dimension(m, r.dim()));
        }
    }
    if let Some(p) = reference_point {
        if p.len() != m {
            return Err(Error::dimension(m, p.len()));
        }
    }
    let mut lo = front.ideal();
    let mut hi = front.nadir();
    let extra = reference
        .map(|r| r.points().to_vec())
        .unwrap_or_default()
        .into_iter()
        .chain(reference_point.map(|p| p.to_vec()));
    for p in extra {
        for j in 0..m {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    let (w, h) = (560.0, 480.0);
    let mut svg = Svg::new(w, h);
    match m {
        2 => {
            let x = Scale::padded(lo[0], hi[0], 60.0, w - 20.0);
            let y = Scale::padded(lo[1], hi[1], h - 50.0, 20.0);
            svg.line(60.0, h - 50.0, w - 20.0, h - 50.0, "axis", "black", 1.0);
            svg.line(60.0, 20.0, 60.0, h - 50.0, "axis", "black", 1.0);
            svg.text(w / 2.0, h - 15.0, "middle", 12.0, "axis-label", "f1");
            svg.text(20.0, h / 2.0, "middle", 12.0, "axis-label", "f2");
            let proj = |p: &[f64]| (x.map(p[0]), y.map(p[1]));
            draw_points(&mut svg, front, reference, reference_point, proj);
        }
        3 => {
            // oblique projection, each axis scaled to the unit interval
            let unit = |p: &[f64], j: usize| if hi[j] > lo[j] { (p[j] - lo[j]) / (hi[j] - lo[j]) } else { 0.5 };
            let proj = |p: &[f64]| {
                let (a, b, c) = (unit(p, 0), unit(p, 1), unit(p, 2));
                (
                    200.0 + 220.0 * a - 120.0 * b,
                    400.0 - 280.0 * c + 60.0 * a + 60.0 * b - 60.0,
                )
            };
            let o = proj(&lo);
            for (j, name) in ["f1", "f2", "f3"].iter().enumerate() {
                let mut e = lo.clone();
                e[j] = hi[j];
                let end = proj(&e);
                svg.line(o.0, o.1, end.0, end.1, "axis", "black", 1.0);
                svg.text(end.0, end.1 - 4.0, "middle", 12.0, "axis-label", name);
            }
            draw_points(&mut svg, front, reference, reference_point, proj);
        }
        _ => {
            let x = Scale::new(0.0, (m - 1) as f64, 50.0, w - 30.0);
            let y: Vec<Scale> = (0..m).map(|j| Scale::new(lo[j], hi[j], h - 50.0, 30.0)).collect();
            for j in 0..m {
                let xx = x.map(j as f64);
                svg.line(xx, 30.0, xx, h - 50.0, "axis", "black", 1.0);
                svg.text(xx, h - 30.0, "middle", 12.0, "axis-label", &format!("f{}", j + 1));
            }
            let line = |p: &[f64]| -> Vec<(f64, f64)> {
                (0..m).map(|j| (x.map(j as f64), y[j].map(p[j]))).collect()
            };
            if let Some(r) = reference {
                for p in r.points() {
                    svg.polyline(&line(p), "reference", "#bbbbbb", 0.5);
                }
            }
            for p in front.points() {
                svg.polyline(&line(p), "point", "#1f77b4", 1.0);
            }
            if let Some(p) = reference_point {
                svg.polyline(&line(p), "reference-point", "red", 2.5);
            }
        }
    }
    Ok(svg.finish())
}

fn draw_points<F: Fn(&[f64]) -> (f64, f64)>(
    svg: &mut Svg,
    front: &Front,
    reference: Option<&Front>,
    reference_point: Option<&[f64]>,
    proj: F,
) {
    if let Some(r) = reference {
        for p in r.points() {
            let (x, y) = proj(p);
            svg.circle(x, y, 1.0, "reference", "#bbbbbb");
        }
    }
    for p in front.points() {
        let (x, y) = proj(p);
        svg.circle(x, y, 3.0, "point", "#1f77b4");
    }
    if let Some(p) = reference_point {
        let (x, y) = proj(p);
        svg.circle(x, y, 6.0, "reference-point", "red");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{bayesian_sign_test, BayesianConfig};

    fn parse(svg: &str) -> roxmltree::Document<'_> {
        let doc = roxmltree::Document::parse(svg).expect("well-formed SVG");
        let root = doc.root_element();
        assert!(root.attribute("width").is_some() && root.attribute("height").is_some());
        doc
    }

    fn count_class(doc: &roxmltree::Document<'_>, class: &str) -> usize {
        doc.descendants().filter(|n| n.attribute("class") == Some(class)).count()
    }

    fn hv_records(cells: &[(&str, &str, Vec<f64>)]) -> Vec<SummaryRecord> {
        cells
            .iter()
            .flat_map(|(a, p, v)| {
                v.iter()
                    .enumerate()
                    .map(move |(i, x)| SummaryRecord::new(a, p, "HV", i as u64, *x))
            })
            .collect()
    }

    #[test]
    fn box_statistics() {
        let b = BoxStats::new(&[1.0, 2.0, 3.0, 4.0, 100.0]).unwrap();
        assert_eq!((b.q1, b.median, b.q3), (2.0, 3.0, 4.0));
        assert_eq!(b.outliers, vec![100.0]);
        assert_eq!(b.whisker_high, 4.0);
        assert_eq!(b.whisker_low, 1.0);
        let c = BoxStats::new(&[0.5; 6]).unwrap();
        assert_eq!((c.q1, c.q3, c.whisker_low, c.whisker_high), (0.5, 0.5, 0.5, 0.5));
        assert!(c.outliers.is_empty());
    }

    #[test]
    fn boxplot_renders_outliers_and_constant_boxes() {
        let recs = hv_records(&[
            ("A", "ZDT6", vec![0.40, 0.41, 0.42, 0.43, 0.90]),
            ("B", "ZDT6", vec![0.3; 5]),
        ]);
        let svg = boxplot_svg(&recs, "HV", "ZDT6").unwrap();
        let doc = parse(&svg);
        assert_eq!(count_class(&doc, "box"), 2);
        assert_eq!(count_class(&doc, "outlier"), 1);
        assert!(boxplot_svg(&recs, "HV", "ZDT1").is_err());
    }

    #[test]
    fn cd_grouping() {
        let g = cd_groups(&[1.2, 2.6, 3.1, 3.9, 4.2], 2.728);
        assert_eq!(g, vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4]]);
        assert!(cd_groups(&[1.0, 2.0], 0.5).is_empty());
        assert_eq!(cd_groups(&[2.0, 2.0, 2.0], 1.0), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn cd_plot_identical_algorithms_form_one_group() {
        let recs = hv_records(&[
            ("A", "P1", vec![0.5]),
            ("B", "P1", vec![0.5]),
            ("C", "P1", vec![0.5]),
            ("A", "P2", vec![0.7]),
            ("B", "P2", vec![0.7]),
            ("C", "P2", vec![0.7]),
        ]);
        let d = CdDiagram::from_records(&recs, "HV", 0.05).unwrap();
        assert_eq!(d.ranks, vec![2.0; 3]);
        assert_eq!(d.groups.len(), 1);
        let svg = d.render();
        let doc = parse(&svg);
        assert_eq!(count_class(&doc, "group"), 1);
        assert_eq!(count_class(&doc, "algorithm"), 3);
    }

    #[test]
    fn posterior_plot_caption_and_vertex() {
        let out = BayesianOutcome {
            triple: PosteriorTriple {
                p_left: 1.0,
                p_rope: 0.0,
                p_right: 0.0,
                rope: 0.002,
            },
            draws: vec![[1.0, 0.0, 0.0]; 10],
            seed: 0,
        };
        let svg = posterior_plot_svg(&out, "SMPSO", "NSGAII", 5000);
        let doc = parse(&svg);
        let draws: Vec<_> = doc.descendants().filter(|n| n.attribute("class") == Some("draw")).collect();
        assert_eq!(draws.len(), 10);
        assert!(draws.iter().all(|n| n.attribute("cx") == Some("60.00") && n.attribute("cy") == Some("400.00")));
        let z = vec![-0.05; 25];
        let real = bayesian_sign_test(&z, &BayesianConfig::default()).unwrap();
        let svg = posterior_plot_svg(&real, "L", "R", 1000);
        let doc = parse(&svg);
        assert_eq!(count_class(&doc, "draw"), 1000);
        let caption = doc
            .descendants()
            .find(|n| n.attribute("class") == Some("caption"))
            .and_then(|n| n.text())
            .unwrap()
            .to_string();
        let probs: f64 = caption
            .split("= ")
            .skip(1)
            .map(|s| s.split_whitespace().next().unwrap().parse::<f64>().unwrap())
            .sum();
        assert!((probs - 1.0).abs() < 1e-5, "{caption}");
    }

    #[test]
    fn front_plots_by_dimension() {
        let f2 = Front::new((0..100).map(|i| vec![i as f64 / 99.0, 1.0 - i as f64 / 99.0]).collect()).unwrap();
        let svg = front_plot_svg(&f2, None, Some(&[0.5, 0.5])).unwrap();
        let doc = parse(&svg);
        assert_eq!(count_class(&doc, "point"), 100);
        let marker = doc
            .descendants()
            .find(|n| n.attribute("class") == Some("reference-point"))
            .unwrap();
        assert_eq!(marker.attribute("fill"), Some("red"));

        let f3 = Front::new(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        let doc_src = front_plot_svg(&f3, Some(&f3), None).unwrap();
        let doc = parse(&doc_src);
        assert_eq!(count_class(&doc, "point"), 3);
        assert_eq!(count_class(&doc, "axis"), 3);

        let f5 = Front::new(vec![vec![0.1, 0.2, 0.3, 0.4, 0.5], vec![0.5, 0.4, 0.3, 0.2, 0.1]]).unwrap();
        let src = front_plot_svg(&f5, None, None).unwrap();
        let doc = parse(&src);
        assert_eq!(count_class(&doc, "axis"), 5);
        assert_eq!(count_class(&doc, "point"), 2);

        let f1 = Front::new(vec![vec![1.0]]).unwrap();
        assert!(front_plot_svg(&f1, None, None).is_err());
        assert!(front_plot_svg(&f2, None, Some(&[0.5])).is_err());
    }
}
