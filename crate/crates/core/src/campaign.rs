//! The corridor campaign: a transmitter stepped along part B toward the far
//! end, a fixed horn receiver in part A, each position run with and without
//! the corner panel.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calibration::write_atomic;
use crate::channel::{
    path_loss_db, synthesize_frequency_response, ComplexTrace, SweepGrid, PAPER_NOISE_FLOOR_DB,
};
use crate::error::{Error, Result};
use crate::geometry::{
    panel_from_alpha, solve_reflector_orientation, AngleSolution, CorridorLayout, LayoutDocument,
    Point2, ReflectorPanel, PAPER_PANEL_WIDTH,
};
use crate::propagation::{power_to_db, AntennaPattern, MaterialId, MaterialTable};
use crate::raytrace::{
    enumerate_paths, los_blocked, Environment, RayPath, DEFAULT_MAX_ORDER, MAX_SUPPORTED_ORDER,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Where the receiving horn points when the panel is removed.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "aim")]
pub enum RxAim {
    /// Same pointing as the panel arm: toward the solved panel center `M`.
    #[default]
    PanelCenter,
    /// Toward the outer corner `O`.
    Corner,
    /// Fixed azimuth from `+x`, degrees.
    Azimuth { degrees: f64 },
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}
fn default_panel_width() -> f64 {
    PAPER_PANEL_WIDTH
}
fn default_tx_count() -> usize {
    16
}
fn default_tx_step() -> f64 {
    0.25
}
fn default_tx_antenna() -> AntennaPattern {
    AntennaPattern::paper_tx()
}
fn default_rx_antenna() -> AntennaPattern {
    AntennaPattern::paper_rx(Point2::new(-1.0, 0.0))
}
fn default_noise_floor() -> f64 {
    PAPER_NOISE_FLOOR_DB
}
fn default_max_order() -> usize {
    DEFAULT_MAX_ORDER
}
fn default_antenna_height() -> f64 {
    1.37
}
fn default_panel_length() -> f64 {
    0.982
}
fn default_panel_material() -> MaterialId {
    MaterialId::metal()
}

/// Campaign configuration. Every field but `layout` has a default, so
/// `{"schema": 1, "layout": {...}}` is a complete document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub layout: LayoutDocument,
    #[serde(default = "default_panel_width")]
    pub panel_width: f64,
    #[serde(default = "default_tx_count")]
    pub tx_count: usize,
    #[serde(default = "default_tx_step")]
    pub tx_step: f64,
    /// Defaults to `(L_R, l_R/2)`.
    #[serde(default)]
    pub rx: Option<Point2>,
    /// Defaults to `l_T/2`.
    #[serde(default)]
    pub tx_axis_x: Option<f64>,
    #[serde(default = "default_tx_antenna")]
    pub tx_antenna: AntennaPattern,
    /// Boresight is overwritten per arm.
    #[serde(default = "default_rx_antenna")]
    pub rx_antenna: AntennaPattern,
    #[serde(default)]
    pub no_panel_rx_aim: RxAim,
    #[serde(default = "SweepGrid::paper")]
    pub sweep: SweepGrid,
    #[serde(default = "default_noise_floor")]
    pub noise_floor_db: f64,
    #[serde(default = "default_max_order")]
    pub max_order: usize,
    #[serde(default)]
    pub materials: MaterialTable,
    #[serde(default = "default_panel_material")]
    pub panel_material: MaterialId,
    /// Metadata only; the model is planar at this height.
    #[serde(default = "default_antenna_height")]
    pub antenna_height: f64,
    /// Metadata only; vertical extent of the panel.
    #[serde(default = "default_panel_length")]
    pub panel_length: f64,
}

impl ScenarioConfig {
    pub fn paper() -> Self {
        Self {
            schema: SCHEMA_VERSION,
            layout: LayoutDocument::paper(),
            panel_width: PAPER_PANEL_WIDTH,
            tx_count: default_tx_count(),
            tx_step: default_tx_step(),
            rx: None,
            tx_axis_x: None,
            tx_antenna: default_tx_antenna(),
            rx_antenna: default_rx_antenna(),
            no_panel_rx_aim: RxAim::default(),
            sweep: SweepGrid::paper(),
            noise_floor_db: PAPER_NOISE_FLOOR_DB,
            max_order: DEFAULT_MAX_ORDER,
            materials: MaterialTable::defaults(),
            panel_material: MaterialId::metal(),
            antenna_height: default_antenna_height(),
            panel_length: default_panel_length(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        if cfg.schema != SCHEMA_VERSION {
            return Err(Error::InvalidScenario(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                cfg.schema
            )));
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Resolves defaults and checks every invariant.
    pub fn prepare(&self) -> Result<Scenario> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::InvalidScenario(format!("unsupported schema {}", self.schema)));
        }
        if self.tx_count < 1 {
            return Err(Error::InvalidScenario("tx_count must be >= 1".into()));
        }
        if !(self.tx_step > 0.0 && self.tx_step.is_finite()) {
            return Err(Error::InvalidScenario(format!("tx_step must be > 0, got {}", self.tx_step)));
        }
        if self.max_order > MAX_SUPPORTED_ORDER {
            return Err(Error::InvalidScenario(format!(
                "max_order {} exceeds {MAX_SUPPORTED_ORDER}",
                self.max_order
            )));
        }
        if !self.noise_floor_db.is_finite() {
            return Err(Error::InvalidScenario("noise floor must be finite".into()));
        }
        self.sweep.validate()?;
        self.tx_antenna.validate()?;
        self.rx_antenna.validate()?;

        let layout = self.layout.build()?;
        let rx = self.rx.unwrap_or_else(|| layout.rx_point());
        layout.require_inside(rx)?;
        let tx_axis_x = self.tx_axis_x.unwrap_or(0.5 * layout.tx_width);
        let scenario = Scenario {
            config: self.clone(),
            layout,
            rx,
            tx_axis_x,
        };
        for w in &scenario.layout.walls {
            self.materials.get(&w.material)?;
        }
        self.materials.get(&self.panel_material)?;
        scenario.tx_positions()?;
        Ok(scenario)
    }
}

/// A validated configuration with its defaults resolved.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub layout: CorridorLayout,
    pub rx: Point2,
    pub tx_axis_x: f64,
}

impl Scenario {
    /// Position `k` (1-based) at `(axis, L_T + l_R − (n − k)·step)`.
    pub fn tx_positions(&self) -> Result<Vec<Point2>> {
        let n = self.config.tx_count;
        let top = self.layout.tx_end_y();
        (1..=n)
            .map(|k| {
                let p = Point2::new(self.tx_axis_x, top - (n - k) as f64 * self.config.tx_step);
                self.layout
                    .require_inside(p)
                    .map(|_| p)
                    .map_err(|e| Error::AtPosition {
                        index: k,
                        source: Box::new(e),
                    })
            })
            .collect()
    }

    pub fn solve(&self) -> Result<AngleSolution> {
        solve_reflector_orientation(&self.layout, self.config.panel_width)
    }

    pub fn environment(&self, panel: Option<ReflectorPanel>) -> Result<Environment> {
        let env = Environment::new(self.layout.clone(), panel)?
            .with_panel_material(self.config.panel_material.clone());
        env.check_materials(&self.config.materials)?;
        Ok(env)
    }

    fn rx_pattern_toward(&self, target: Point2) -> AntennaPattern {
        self.config.rx_antenna.pointed(target - self.rx)
    }

    fn no_panel_rx_pattern(&self, panel_center: Point2) -> AntennaPattern {
        match self.config.no_panel_rx_aim {
            RxAim::PanelCenter => self.rx_pattern_toward(panel_center),
            RxAim::Corner => self.rx_pattern_toward(Point2::ORIGIN),
            RxAim::Azimuth { degrees } => self
                .config
                .rx_antenna
                .pointed(Point2::from_angle(degrees.to_radians())),
        }
    }

    fn arm_loss(
        &self,
        tx: Point2,
        env: &Environment,
        rx_pattern: &AntennaPattern,
    ) -> Result<(f64, Vec<RayPath>, ComplexTrace)> {
        let paths = enumerate_paths(tx, self.rx, env, self.config.max_order)?;
        let trace = synthesize_frequency_response(
            &paths,
            &self.config.sweep,
            &self.config.tx_antenna,
            rx_pattern,
            &self.config.materials,
        )?;
        let loss = path_loss_db(&trace, Some(self.config.noise_floor_db))?;
        Ok((loss, paths, trace))
    }
}

/// Solved angles and panel geometry in external units (degrees, meters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientationReport {
    pub alpha_deg: f64,
    pub beta_deg: f64,
    pub gamma_deg: f64,
    pub residual_rad: f64,
    pub panel_width: f64,
    pub endpoint_a: Point2,
    pub endpoint_b: Point2,
    pub center_m: Point2,
}

impl From<&AngleSolution> for OrientationReport {
    fn from(s: &AngleSolution) -> Self {
        Self {
            alpha_deg: s.alpha.to_degrees(),
            beta_deg: s.beta.to_degrees(),
            gamma_deg: s.gamma.to_degrees(),
            residual_rad: s.residual,
            panel_width: s.panel.width,
            endpoint_a: s.panel.endpoint_a,
            endpoint_b: s.panel.endpoint_b,
            center_m: s.panel.center,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionRecord {
    /// 1-based.
    pub index: usize,
    pub tx: Point2,
    pub los: bool,
    pub pl_without_db: f64,
    pub pl_with_db: f64,
    /// `pl_without_db − pl_with_db`.
    pub improvement_db: f64,
    pub path_count_without: usize,
    pub path_count_with: usize,
    pub paths_without: Vec<RayPath>,
    pub paths_with: Vec<RayPath>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignResult {
    pub orientation: OrientationReport,
    pub rx: Point2,
    pub noise_floor_db: f64,
    pub records: Vec<PositionRecord>,
}

pub fn tx_positions(config: &ScenarioConfig) -> Result<Vec<Point2>> {
    config.prepare()?.tx_positions()
}

pub fn run_campaign(config: &ScenarioConfig) -> Result<CampaignResult> {
    let scenario = config.prepare()?;
    let solution = scenario.solve()?;
    run_with_panel(&scenario, &solution)
}

fn run_with_panel(scenario: &Scenario, solution: &AngleSolution) -> Result<CampaignResult> {
    let positions = scenario.tx_positions()?;
    let env_with = scenario.environment(Some(solution.panel))?;
    let env_without = scenario.environment(None)?;
    let rx_with = scenario.rx_pattern_toward(solution.panel.center);
    let rx_without = scenario.no_panel_rx_pattern(solution.panel.center);

    let records = positions
        .par_iter()
        .enumerate()
        .map(|(i, &tx)| {
            let index = i + 1;
            let at = |e: Error| Error::AtPosition {
                index,
                source: Box::new(e),
            };
            let los = !los_blocked(tx, scenario.rx, &env_without).map_err(at)?;
            let (pl_without_db, paths_without, _) =
                scenario.arm_loss(tx, &env_without, &rx_without).map_err(at)?;
            let (pl_with_db, paths_with, _) =
                scenario.arm_loss(tx, &env_with, &rx_with).map_err(at)?;
            Ok(PositionRecord {
                index,
                tx,
                los,
                pl_without_db,
                pl_with_db,
                improvement_db: pl_without_db - pl_with_db,
                path_count_without: paths_without.len(),
                path_count_with: paths_with.len(),
                paths_without,
                paths_with,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CampaignResult {
        orientation: solution.into(),
        rx: scenario.rx,
        noise_floor_db: scenario.config.noise_floor_db,
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImprovementCurve {
    /// `(index, improvement dB)` in position order.
    pub points: Vec<(usize, f64)>,
    /// Position index of the largest improvement; ties go to the first.
    pub argmax: Option<usize>,
    pub max_db: Option<f64>,
}

pub fn improvement_curve(result: &CampaignResult) -> ImprovementCurve {
    let points: Vec<(usize, f64)> = result
        .records
        .iter()
        .map(|r| (r.index, r.improvement_db))
        .collect();
    let best = points.iter().fold(None::<(usize, f64)>, |best, &(i, v)| match best {
        Some((_, b)) if b >= v => best,
        _ => Some((i, v)),
    });
    ImprovementCurve {
        points,
        argmax: best.map(|b| b.0),
        max_db: best.map(|b| b.1),
    }
}

/// One transmitter position evaluated in a single arm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationRequest {
    pub config: ScenarioConfig,
    pub tx: Point2,
    #[serde(default = "yes")]
    pub panel_enabled: bool,
    /// Replaces the solved panel angle, degrees.
    #[serde(default)]
    pub alpha_override_deg: Option<f64>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub n_points: usize,
    pub mean_power_db: f64,
    pub min_power_db: f64,
    pub max_power_db: f64,
}

impl TraceSummary {
    /// Powers of an all-zero trace are reported at `-floor_db`.
    fn of(trace: &ComplexTrace, floor_db: f64) -> Self {
        let db = |p: f64| if p > 0.0 { power_to_db(p) } else { -floor_db };
        let powers = trace.values.iter().map(|v| v.norm_sqr());
        let (lo, hi) = powers.fold((f64::INFINITY, 0.0f64), |(lo, hi), p| (lo.min(p), hi.max(p)));
        Self {
            n_points: trace.values.len(),
            mean_power_db: db(trace.mean_power()),
            min_power_db: db(lo),
            max_power_db: db(hi),
        }
    }
}

/// Panel placement as simulated, which differs from the solved one when
/// `alpha_override_deg` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PanelReport {
    pub alpha_deg: f64,
    pub width: f64,
    pub endpoint_a: Point2,
    pub endpoint_b: Point2,
    pub center: Point2,
}

impl From<&ReflectorPanel> for PanelReport {
    fn from(p: &ReflectorPanel) -> Self {
        Self {
            alpha_deg: p.alpha.to_degrees(),
            width: p.width,
            endpoint_a: p.endpoint_a,
            endpoint_b: p.endpoint_b,
            center: p.center,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub orientation: OrientationReport,
    pub panel: Option<PanelReport>,
    pub tx: Point2,
    pub rx: Point2,
    pub los: bool,
    pub path_loss_db: f64,
    pub trace: TraceSummary,
    pub paths: Vec<RayPath>,
}

fn panel_for(
    scenario: &Scenario,
    alpha_override_deg: Option<f64>,
) -> Result<(AngleSolution, ReflectorPanel)> {
    let solution = scenario.solve()?;
    let panel = match alpha_override_deg {
        Some(deg) if deg > 0.0 && deg < 90.0 => {
            panel_from_alpha(deg.to_radians(), scenario.config.panel_width)
        }
        Some(deg) => {
            return Err(Error::Domain(format!("α override {deg}° outside (0°, 90°)")));
        }
        None => solution.panel,
    };
    Ok((solution, panel))
}

/// Paths and band-averaged loss for one transmitter position.
pub fn simulate(req: &SimulationRequest) -> Result<SimulationResult> {
    let scenario = req.config.prepare()?;
    let (solution, panel) = panel_for(&scenario, req.alpha_override_deg)?;
    let env_without = scenario.environment(None)?;
    let (env, rx_pattern) = if req.panel_enabled {
        (
            scenario.environment(Some(panel))?,
            scenario.rx_pattern_toward(panel.center),
        )
    } else {
        (env_without.clone(), scenario.no_panel_rx_pattern(panel.center))
    };
    let los = !los_blocked(req.tx, scenario.rx, &env_without)?;
    let (path_loss_db, paths, trace) = scenario.arm_loss(req.tx, &env, &rx_pattern)?;
    Ok(SimulationResult {
        orientation: (&solution).into(),
        panel: req.panel_enabled.then(|| (&panel).into()),
        tx: req.tx,
        rx: scenario.rx,
        los,
        path_loss_db,
        trace: TraceSummary::of(&trace, scenario.config.noise_floor_db),
        paths,
    })
}

/// Rectangular probe grid for heatmaps, inclusive of both edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageRequest {
    pub config: ScenarioConfig,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    #[serde(default = "yes")]
    pub panel_enabled: bool,
    #[serde(default)]
    pub alpha_override_deg: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageGrid {
    pub orientation: OrientationReport,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// Row-major by y: `path_loss_db[j][i]` is at `(xs[i], ys[j])`.
    /// `None` outside the corridor.
    pub path_loss_db: Vec<Vec<Option<f64>>>,
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.5 * (lo + hi)],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Path loss from each probe transmitter to the configured receiver.
pub fn coverage(req: &CoverageRequest) -> Result<CoverageGrid> {
    if req.nx == 0 || req.ny == 0 || req.nx * req.ny > 250_000 {
        return Err(Error::Domain(format!("coverage grid {}×{} not supported", req.nx, req.ny)));
    }
    if !(req.x_min <= req.x_max && req.y_min <= req.y_max) {
        return Err(Error::Domain("coverage bounds are inverted".into()));
    }
    let scenario = req.config.prepare()?;
    let (solution, panel) = panel_for(&scenario, req.alpha_override_deg)?;
    let (env, rx_pattern) = if req.panel_enabled {
        (
            scenario.environment(Some(panel))?,
            scenario.rx_pattern_toward(panel.center),
        )
    } else {
        (scenario.environment(None)?, scenario.no_panel_rx_pattern(panel.center))
    };
    let xs = axis(req.x_min, req.x_max, req.nx);
    let ys = axis(req.y_min, req.y_max, req.ny);
    let rows = ys
        .par_iter()
        .map(|&y| {
            xs.iter()
                .map(|&x| {
                    let tx = Point2::new(x, y);
                    if !scenario.layout.contains(tx) {
                        return Ok(None);
                    }
                    scenario.arm_loss(tx, &env, &rx_pattern).map(|r| Some(r.0))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverageGrid {
        orientation: (&solution).into(),
        xs,
        ys,
        path_loss_db: rows,
    })
}

pub fn results_csv(result: &CampaignResult) -> String {
    let mut out = String::from(
        "index,tx_x,tx_y,los,pl_without_db,pl_with_db,improvement_db,paths_without,paths_with\n",
    );
    for r in &result.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.index,
            r.tx.x,
            r.tx.y,
            r.los,
            r.pl_without_db,
            r.pl_with_db,
            r.improvement_db,
            r.path_count_without,
            r.path_count_with
        );
    }
    out
}

/// Two-column `index,pl_db` series for one arm.
pub fn series_csv(result: &CampaignResult, with_panel: bool) -> String {
    let mut out = String::from("index,pl_db\n");
    for r in &result.records {
        let v = if with_panel { r.pl_with_db } else { r.pl_without_db };
        let _ = writeln!(out, "{},{}", r.index, v);
    }
    out
}

/// Writes `results.csv`, `results.json`, `series_with_panel.csv` and
/// `series_without_panel.csv` into `dir`.
pub fn write_campaign_outputs(result: &CampaignResult, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_atomic(&dir.join("results.csv"), results_csv(result).as_bytes())?;
    let json = serde_json::to_string_pretty(result)?;
    write_atomic(&dir.join("results.json"), json.as_bytes())?;
    write_atomic(
        &dir.join("series_with_panel.csv"),
        series_csv(result, true).as_bytes(),
    )?;
    write_atomic(
        &dir.join("series_without_panel.csv"),
        series_csv(result, false).as_bytes(),
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(index: usize, without: f64, with: f64) -> PositionRecord {
        PositionRecord {
            index,
            tx: Point2::ORIGIN,
            los: false,
            pl_without_db: without,
            pl_with_db: with,
            improvement_db: without - with,
            path_count_without: 0,
            path_count_with: 0,
            paths_without: vec![],
            paths_with: vec![],
        }
    }

    fn result(records: Vec<PositionRecord>) -> CampaignResult {
        let sol = solve_reflector_orientation(&CorridorLayout::paper(), PAPER_PANEL_WIDTH).unwrap();
        CampaignResult {
            orientation: (&sol).into(),
            rx: Point2::new(3.69, 1.0),
            noise_floor_db: 108.0,
            records,
        }
    }

    #[test]
    fn identical_arms_give_zero_curve() {
        let r = result((1..=5).map(|i| record(i, 80.0 + i as f64, 80.0 + i as f64)).collect());
        let c = improvement_curve(&r);
        assert!(c.points.iter().all(|p| p.1 == 0.0));
        assert_eq!(c.argmax, Some(1));
    }

    #[test]
    fn constant_offset_curve() {
        let r = result((1..=5).map(|i| record(i, 90.0 + i as f64, 80.0 + i as f64)).collect());
        let c = improvement_curve(&r);
        assert!(c.points.iter().all(|p| (p.1 - 10.0).abs() < 1e-12));
    }

    #[test]
    fn argmax_picks_largest() {
        let r = result(vec![record(1, 80.0, 79.0), record(2, 100.0, 88.0), record(3, 90.0, 85.0)]);
        let c = improvement_curve(&r);
        assert_eq!(c.argmax, Some(2));
        assert_eq!(c.max_db, Some(12.0));
    }

    #[test]
    fn empty_curve() {
        let c = improvement_curve(&result(vec![]));
        assert_eq!(c.argmax, None);
    }

    #[test]
    fn schema_enforced() {
        let mut json: serde_json::Value = serde_json::to_value(ScenarioConfig::paper()).unwrap();
        json["schema"] = 2.into();
        assert!(ScenarioConfig::from_json(&json.to_string()).is_err());
    }

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = ScenarioConfig::from_json(
            r#"{"schema":1,"layout":{"L_T":2.75,"L_R":3.69,"l_T":1.62,"l_R":2.0}}"#,
        )
        .unwrap();
        assert_eq!(cfg, ScenarioConfig::paper());
    }

    #[test]
    fn invalid_configs() {
        let mut c = ScenarioConfig::paper();
        c.tx_count = 0;
        assert!(c.prepare().is_err());
        let mut c = ScenarioConfig::paper();
        c.tx_step = 0.5; // Tx1 would sit at y = -2.75
        assert!(matches!(c.prepare(), Err(Error::AtPosition { index: 1, .. })));
        let mut c = ScenarioConfig::paper();
        c.rx = Some(Point2::new(3.0, 3.0));
        assert!(c.prepare().is_err());
        let mut c = ScenarioConfig::paper();
        c.panel_material = MaterialId::new("gold");
        assert!(c.prepare().is_err());
        let mut c = ScenarioConfig::paper();
        c.max_order = 4;
        assert!(c.prepare().is_err());
    }

    #[test]
    fn zero_trace_summary_is_finite() {
        let s = TraceSummary::of(&ComplexTrace::zeros(SweepGrid::paper()), 108.0);
        assert_eq!(s.mean_power_db, -108.0);
        assert_eq!(s.max_power_db, -108.0);
    }
}
