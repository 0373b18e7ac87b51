//! Calibrated success tables for the three primitives.
//!
//! Every cell is either `calibrated` — anchored to measured hardware trials
//! — or `extrapolated` — a nearest-band stand-in where no measurement
//! exists. Lookups never invent rates: extrapolated cells copy the nearest
//! calibrated value and say so, and reports can surface the provenance.
//!
//! Band semantics: rows are scanned in order and the first band containing
//! the query wins; bands are closed on both ends so anchored boundary
//! values (9 mm height, 6° and 12° prying angles) land in their measured
//! band exactly.

use super::{GraspMode, PrimitiveError};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Hard reach limit for pinching a sheet: the gripper's opening span.
pub const MAX_PAPER_GRASP_OFFSET: f64 = 0.096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Calibrated,
    Extrapolated,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Calibrated => "calibrated",
            Provenance::Extrapolated => "extrapolated",
        })
    }
}

/// Closed interval [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

/// Containment slack: keys arrive through unit conversions (radians to
/// degrees), so an anchored boundary like 12° may show up as 12 + 2 ulp.
/// Far below table resolution, so bands cannot bleed into one another.
const BAND_EPS: f64 = 1e-9;

impl Band {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Band { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo - BAND_EPS && x <= self.hi + BAND_EPS
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

fn parse_band(s: &str) -> Result<Band, PrimitiveError> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| PrimitiveError::BadTable(format!("band `{}` needs lo:hi", s)))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| PrimitiveError::BadTable(format!("bad number `{}`", t)))
    };
    Ok(Band::new(parse(lo)?, parse(hi)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContactRow {
    pub mode: GraspMode,
    /// Object height band, meters.
    pub height: Band,
    /// Grasp-point offset band, as a fraction of the footprint dimension.
    pub offset_frac: Band,
    pub probability: f64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaperRow {
    /// Grasp offset from the sheet edge, meters.
    pub offset: Band,
    /// Heaviest paper (grams per square meter) still graspable here.
    pub critical_gsm: f64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PryRow {
    /// Book thickness band, meters.
    pub thickness: Band,
    /// Prying angle band, degrees.
    pub alpha_deg: Band,
    pub probability: f64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityTables {
    pub contact: Vec<ContactRow>,
    pub paper: Vec<PaperRow>,
    pub pry: Vec<PryRow>,
}

const INF: f64 = f64::INFINITY;

impl Default for FeasibilityTables {
    fn default() -> Self {
        use GraspMode::*;
        use Provenance::*;
        let c = |mode, height, offset_frac, probability, provenance| ContactRow {
            mode,
            height,
            offset_frac,
            probability,
            provenance,
        };
        let p = |offset, critical_gsm, provenance| PaperRow {
            offset,
            critical_gsm,
            provenance,
        };
        let y = |thickness, alpha_deg, probability, provenance| PryRow {
            thickness,
            alpha_deg,
            probability,
            provenance,
        };
        FeasibilityTables {
            contact: vec![
                // Fingertips pressed into the support cage the object:
                // reliable at any tested height when centered.
                c(Contact, Band::new(0.0, INF), Band::new(0.0, 0.0), 1.0, Calibrated),
                // Off-center up to a third of the dimension: measured floor.
                c(Contact, Band::new(0.0, INF), Band::new(0.0, 0.34), 0.9, Calibrated),
                c(Contact, Band::new(0.0, INF), Band::new(0.34, INF), 0.9, Extrapolated),
                // Without surface contact, low objects slip out.
                c(Noncontact, Band::new(0.0, 0.0105), Band::new(0.0, INF), 0.6, Calibrated),
                c(Noncontact, Band::new(0.0105, INF), Band::new(0.0, INF), 0.6, Extrapolated),
            ],
            paper: vec![
                p(Band::new(0.0, 0.0805), 80.0, Calibrated),
                // Edge effect near the opening limit: thicker sheets hold.
                p(Band::new(0.0805, MAX_PAPER_GRASP_OFFSET), 120.0, Calibrated),
            ],
            pry: vec![
                // Thin covers pry off at any tested angle (the spine's own
                // angle does the work even at zero).
                y(Band::new(0.0025, 0.0045), Band::new(0.0, 15.0), 1.0, Calibrated),
                y(Band::new(0.0045, 0.00775), Band::new(0.0, 15.0), 1.0, Calibrated),
                y(Band::new(0.00775, 0.0105), Band::new(1.5, 15.0), 1.0, Calibrated),
                y(Band::new(0.00775, 0.0105), Band::new(0.0, 1.5), 0.8, Calibrated),
                y(Band::new(0.0105, 0.018), Band::new(6.0, 12.0), 1.0, Calibrated),
                y(Band::new(0.0105, 0.018), Band::new(0.0, 6.0), 0.8, Calibrated),
                y(Band::new(0.0105, 0.018), Band::new(12.0, 15.0), 0.8, Calibrated),
                // Too thick to lift by the spine at all.
                y(Band::new(0.018, 0.0241), Band::new(0.0, 15.0), 0.0, Calibrated),
            ],
        }
    }
}

impl FeasibilityTables {
    /// Feasible prying-angle interval (degrees) for a thickness, if any
    /// band clears `threshold`.
    pub fn pry_feasible_alpha_deg(&self, thickness: f64, threshold: f64) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64)> = None;
        for row in &self.pry {
            if row.thickness.contains(thickness) && row.probability >= threshold {
                best = Some(match best {
                    None => (row.alpha_deg.lo, row.alpha_deg.hi),
                    Some((lo, hi)) => (lo.min(row.alpha_deg.lo), hi.max(row.alpha_deg.hi)),
                });
            }
        }
        best
    }

    /// Serialize to the editable tabular format. One row per cell:
    /// `primitive,param1,param2,value,provenance`. For `paper_grasp` rows
    /// the value column holds the critical GSM rather than a probability.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("primitive,param1,param2,value,provenance\n");
        for r in &self.contact {
            out.push_str(&format!(
                "contact_grasp,{}:{},offset_frac={},{},{}\n",
                r.mode, r.height, r.offset_frac, r.probability, r.provenance
            ));
        }
        for r in &self.paper {
            out.push_str(&format!(
                "paper_grasp,offset={},critical_gsm,{},{}\n",
                r.offset, r.critical_gsm, r.provenance
            ));
        }
        for r in &self.pry {
            out.push_str(&format!(
                "pry,thickness={},alpha_deg={},{},{}\n",
                r.thickness, r.alpha_deg, r.probability, r.provenance
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, PrimitiveError> {
        let mut tables = FeasibilityTables {
            contact: Vec::new(),
            paper: Vec::new(),
            pry: Vec::new(),
        };
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("primitive,") {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(PrimitiveError::BadTable(format!(
                    "line {}: expected 5 fields, got {}",
                    ln + 1,
                    fields.len()
                )));
            }
            let value: f64 = fields[3]
                .trim()
                .parse()
                .map_err(|_| PrimitiveError::BadTable(format!("line {}: bad value", ln + 1)))?;
            let provenance = match fields[4].trim() {
                "calibrated" => Provenance::Calibrated,
                "extrapolated" => Provenance::Extrapolated,
                other => {
                    return Err(PrimitiveError::BadTable(format!(
                        "line {}: unknown provenance `{}`",
                        ln + 1,
                        other
                    )))
                }
            };
            let strip = |s: &str, prefix: &str| -> Result<String, PrimitiveError> {
                s.trim()
                    .strip_prefix(prefix)
                    .map(str::to_string)
                    .ok_or_else(|| {
                        PrimitiveError::BadTable(format!(
                            "line {}: expected `{}…`, got `{}`",
                            ln + 1,
                            prefix,
                            s
                        ))
                    })
            };
            match fields[0].trim() {
                "contact_grasp" => {
                    let (mode, height) = fields[1].trim().split_once(':').ok_or_else(|| {
                        PrimitiveError::BadTable(format!("line {}: bad param1", ln + 1))
                    })?;
                    let mode = match mode {
                        "contact" => GraspMode::Contact,
                        "noncontact" => GraspMode::Noncontact,
                        other => {
                            return Err(PrimitiveError::BadTable(format!(
                                "line {}: unknown mode `{}`",
                                ln + 1,
                                other
                            )))
                        }
                    };
                    tables.contact.push(ContactRow {
                        mode,
                        height: parse_band(height)?,
                        offset_frac: parse_band(&strip(fields[2], "offset_frac=")?)?,
                        probability: value,
                        provenance,
                    });
                }
                "paper_grasp" => {
                    tables.paper.push(PaperRow {
                        offset: parse_band(&strip(fields[1], "offset=")?)?,
                        critical_gsm: value,
                        provenance,
                    });
                }
                "pry" => {
                    tables.pry.push(PryRow {
                        thickness: parse_band(&strip(fields[1], "thickness=")?)?,
                        alpha_deg: parse_band(&strip(fields[2], "alpha_deg=")?)?,
                        probability: value,
                        provenance,
                    });
                }
                other => {
                    return Err(PrimitiveError::BadTable(format!(
                        "line {}: unknown primitive `{}`",
                        ln + 1,
                        other
                    )))
                }
            }
        }
        if tables.contact.is_empty() || tables.paper.is_empty() || tables.pry.is_empty() {
            return Err(PrimitiveError::BadTable("table is missing sections".into()));
        }
        Ok(tables)
    }
}

/// Success probability of a contact/non-contact grasp. `offset` is the
/// grasp point's miss as fractions of the footprint dimensions; the larger
/// component picks the band.
pub fn contact_grasp_probability(
    tables: &FeasibilityTables,
    mode: GraspMode,
    height: f64,
    offset: (f64, f64),
) -> f64 {
    let frac = offset.0.abs().max(offset.1.abs());
    for row in &tables.contact {
        if row.mode == mode && row.height.contains(height) && row.offset_frac.contains(frac) {
            return row.probability;
        }
    }
    0.0
}

/// Whether a sheet of the given weight can be pinched at `grasp_offset`
/// from its edge.
pub fn paper_grasp_feasible(
    tables: &FeasibilityTables,
    gsm: f64,
    grasp_offset: f64,
) -> Result<bool, PrimitiveError> {
    if !(grasp_offset > 0.0 && grasp_offset <= MAX_PAPER_GRASP_OFFSET) {
        return Err(PrimitiveError::OffsetOutOfRange(grasp_offset));
    }
    for row in &tables.paper {
        if row.offset.contains(grasp_offset) {
            return Ok(gsm <= row.critical_gsm);
        }
    }
    Err(PrimitiveError::OffsetOutOfRange(grasp_offset))
}

/// Pry success probability plus a flag set when the query fell outside the
/// tested envelope (answered 0.0, but it is a guess, not a measurement).
pub fn pry_probability_checked(
    tables: &FeasibilityTables,
    thickness: f64,
    alpha: f64,
) -> (f64, bool) {
    let alpha_deg = alpha.to_degrees();
    for row in &tables.pry {
        if row.thickness.contains(thickness) && row.alpha_deg.contains(alpha_deg) {
            return (row.probability, false);
        }
    }
    (0.0, true)
}

pub fn pry_probability(tables: &FeasibilityTables, thickness: f64, alpha: f64) -> f64 {
    pry_probability_checked(tables, thickness, alpha).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchored_contact_cells() {
        let t = FeasibilityTables::default();
        assert_eq!(
            contact_grasp_probability(&t, GraspMode::Contact, 0.006, (0.0, 0.0)),
            1.0
        );
        assert_eq!(
            contact_grasp_probability(&t, GraspMode::Noncontact, 0.009, (0.0, 0.0)),
            0.6
        );
        assert_eq!(
            contact_grasp_probability(&t, GraspMode::Contact, 0.012, (1.0 / 3.0, 0.0)),
            0.9
        );
    }

    #[test]
    fn anchored_paper_cells() {
        let t = FeasibilityTables::default();
        assert_eq!(paper_grasp_feasible(&t, 80.0, 0.070).unwrap(), true);
        assert_eq!(paper_grasp_feasible(&t, 120.0, 0.090).unwrap(), true);
        assert_eq!(paper_grasp_feasible(&t, 130.0, 0.090).unwrap(), false);
        assert!(matches!(
            paper_grasp_feasible(&t, 80.0, 0.0),
            Err(PrimitiveError::OffsetOutOfRange(_))
        ));
        assert!(matches!(
            paper_grasp_feasible(&t, 80.0, 0.097),
            Err(PrimitiveError::OffsetOutOfRange(_))
        ));
    }

    #[test]
    fn anchored_pry_cells() {
        let t = FeasibilityTables::default();
        let deg = |d: f64| d.to_radians();
        assert_eq!(pry_probability(&t, 0.012, deg(9.0)), 1.0);
        assert_eq!(pry_probability(&t, 0.024, deg(9.0)), 0.0);
        assert_eq!(pry_probability(&t, 0.009, deg(0.0)), 0.8);
        assert_eq!(pry_probability(&t, 0.0025, deg(0.0)), 1.0);
        assert_eq!(pry_probability(&t, 0.0065, deg(15.0)), 1.0);
        // Boundary angles for the 12 mm class are anchored on the good side.
        assert_eq!(pry_probability(&t, 0.012, deg(6.0)), 1.0);
        assert_eq!(pry_probability(&t, 0.012, deg(12.0)), 1.0);
        assert_eq!(pry_probability(&t, 0.012, deg(5.9)), 0.8);
        assert_eq!(pry_probability(&t, 0.012, deg(12.1)), 0.8);
    }

    #[test]
    fn out_of_band_thickness_warns() {
        let t = FeasibilityTables::default();
        let (p, warned) = pry_probability_checked(&t, 0.030, 9f64.to_radians());
        assert_eq!(p, 0.0);
        assert!(warned);
        let (p, warned) = pry_probability_checked(&t, 0.001, 9f64.to_radians());
        assert_eq!(p, 0.0);
        assert!(warned);
        let (_, warned) = pry_probability_checked(&t, 0.012, 9f64.to_radians());
        assert!(!warned);
    }

    #[test]
    fn feasible_alpha_bands() {
        let t = FeasibilityTables::default();
        assert_eq!(t.pry_feasible_alpha_deg(0.012, 0.9), Some((6.0, 12.0)));
        assert_eq!(t.pry_feasible_alpha_deg(0.0025, 0.9), Some((0.0, 15.0)));
        assert_eq!(t.pry_feasible_alpha_deg(0.009, 0.9), Some((1.5, 15.0)));
        assert_eq!(t.pry_feasible_alpha_deg(0.024, 0.9), None);
    }

    #[test]
    fn csv_round_trip() {
        let t = FeasibilityTables::default();
        let csv = t.to_csv();
        let back = FeasibilityTables::from_csv(&csv).unwrap();
        assert_eq!(t, back);
        assert!(csv.contains("calibrated"));
        assert!(csv.contains("extrapolated"));
    }

    #[test]
    fn rejects_malformed_csv() {
        assert!(FeasibilityTables::from_csv("pry,nonsense\n").is_err());
        assert!(FeasibilityTables::from_csv("").is_err());
    }
}
