//! Stable report serialization.
//!
//! JSON fields are emitted in fixed declaration order and every rational is
//! rendered exactly as `num/den` (or `num` for integers), so identical inputs
//! produce byte-identical documents across runs and worker counts. Decimals
//! appear only in the display-only mean-bound field.

use num_traits::ToPrimitive;
use serde::ser::{Serialize, SerializeMap, SerializeSeq, SerializeStruct, Serializer};

use crate::crit::{AnalysisReport, CritProfile, VolumeReport};
use crate::exact::{rat_string, Rat, Vector};
use crate::quotient::{CanonicalCase, QuotientDatum};

pub(crate) struct RatStr<'a>(pub &'a Rat);

impl Serialize for RatStr<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_string(self.0))
    }
}

/// Integral vectors render as arrays of JSON integers; anything else falls
/// back to exact rational strings entry-wise.
pub(crate) struct VecJson<'a>(pub &'a Vector);

impl Serialize for VecJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.dim()))?;
        for e in self.0.entries() {
            match (e.is_integer(), e.to_integer().to_i64()) {
                (true, Some(n)) => seq.serialize_element(&n)?,
                _ => seq.serialize_element(&rat_string(e))?,
            }
        }
        seq.end()
    }
}

pub(crate) struct VecsJson<'a>(pub &'a [Vector]);

impl Serialize for VecsJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for v in self.0 {
            seq.serialize_element(&VecJson(v))?;
        }
        seq.end()
    }
}

struct CminMap<'a>(&'a [CritProfile]);

impl Serialize for CminMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for p in self.0 {
            map.serialize_entry(&(p.index + 1).to_string(), &RatStr(&p.c_min))?;
        }
        map.end()
    }
}

struct CritMap<'a>(&'a [CritProfile]);

impl Serialize for CritMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for p in self.0 {
            map.serialize_entry(&(p.index + 1).to_string(), &VecsJson(&p.vectors))?;
        }
        map.end()
    }
}

impl Serialize for VolumeReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VolumeReport", 3)?;
        st.serialize_field("vol", &RatStr(&self.vol))?;
        st.serialize_field("h", &self.h_display)?;
        st.serialize_field("guarantee", &self.guarantee)?;
        st.end()
    }
}

impl Serialize for AnalysisReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AnalysisReport", 16)?;
        st.serialize_field("cone", &VecsJson(&self.cone))?;
        st.serialize_field("w", &VecJson(&self.w))?;
        st.serialize_field("dim", &self.dim)?;
        let mu: Vec<usize> = self.mu_indices.iter().map(|i| i + 1).collect();
        st.serialize_field("mu", &mu)?;
        st.serialize_field("dim_mu", &self.dim_mu)?;
        st.serialize_field("d_prime", &self.d_prime)?;
        st.serialize_field("c_min", &CminMap(&self.profiles))?;
        st.serialize_field("crit", &CritMap(&self.profiles))?;
        st.serialize_field("dim_vw", &self.dim_vw)?;
        st.serialize_field("dim_mu_perp_cap_vw", &self.dim_mu_perp_cap_vw)?;
        st.serialize_field("dim_tau", &self.dim_tau)?;
        st.serialize_field("center_dim", &self.center_dim)?;
        st.serialize_field("discrepancy", &RatStr(&self.discrepancy))?;
        st.serialize_field("is_essential_candidate", &self.is_essential_candidate)?;
        st.serialize_field("level_one_found", self.level_one.as_str())?;
        st.serialize_field("volume", &self.volume)?;
        st.end()
    }
}

/// Quotient-level report wrapping an optional element analysis.
#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub spec: Vec<String>,
    pub dim: usize,
    pub group_order: u64,
    pub lattice_basis: Vec<Vector>,
    pub cone: Vec<Vector>,
    pub singularity: Option<crate::cone::Singularity>,
    pub classification: Option<CanonicalCase>,
    pub w_input: Option<Vector>,
    pub w_lattice: Option<Vector>,
    pub analysis: Option<AnalysisReport>,
}

impl QuotientReport {
    pub fn build(
        datum: &QuotientDatum,
        spec: Vec<String>,
        singularity: Option<crate::cone::Singularity>,
        w_input: Option<Vector>,
        w_lattice: Option<Vector>,
        analysis: Option<AnalysisReport>,
    ) -> Self {
        let classification = match (&datum.generators[..], datum.dim) {
            ([g], 3) => classify_single(g),
            _ => None,
        };
        QuotientReport {
            spec,
            dim: datum.dim,
            group_order: datum.group_order,
            lattice_basis: (0..datum.dim).map(|k| datum.basis.column(k)).collect(),
            cone: datum.cone.generators().to_vec(),
            singularity,
            classification,
            w_input,
            w_lattice,
            analysis,
        }
    }
}

fn classify_single(g: &crate::quotient::CyclicGenerator) -> Option<CanonicalCase> {
    let w = &g.weights;
    crate::quotient::classify_cyclic_3d(g.order, w[0], w[1], w[2]).ok()
}

impl Serialize for QuotientReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuotientReport", 10)?;
        st.serialize_field("spec", &self.spec)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("group_order", &self.group_order)?;
        st.serialize_field("lattice_basis", &VecsJson(&self.lattice_basis))?;
        st.serialize_field("cone", &VecsJson(&self.cone))?;
        st.serialize_field("singularity", &self.singularity.map(|s| s.to_string()))?;
        st.serialize_field("classification", &self.classification.map(|c| c.as_str()))?;
        st.serialize_field("w_input", &self.w_input.as_ref().map(VecJson))?;
        st.serialize_field("w_lattice", &self.w_lattice.as_ref().map(VecJson))?;
        st.serialize_field("analysis", &self.analysis)?;
        st.end()
    }
}

fn vector_text(v: &Vector) -> String {
    let parts: Vec<String> = v.entries().iter().map(rat_string).collect();
    format!("({})", parts.join(","))
}

fn vectors_text(vs: &[Vector]) -> String {
    vs.iter().map(vector_text).collect::<Vec<_>>().join(" ")
}

/// Human-readable rendering of an analysis report.
pub fn analysis_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        out.push_str(&format!("{k:<22}{v}\n"));
    };
    line("cone", vectors_text(&r.cone));
    line("w", vector_text(&r.w));
    let mu: Vec<String> = r.mu_indices.iter().map(|i| (i + 1).to_string()).collect();
    line(
        "minimal face",
        format!("{{{}}} (dim {})", mu.join(","), r.dim_mu),
    );
    line("length bound", r.d_prime.to_string());
    for p in &r.profiles {
        line(
            &format!("crit[{}]", p.index + 1),
            format!(
                "c_min={}  {}",
                rat_string(&p.c_min),
                vectors_text(&p.vectors)
            ),
        );
    }
    line("dim V_w", r.dim_vw.to_string());
    line("dim mu_perp cap V_w", r.dim_mu_perp_cap_vw.to_string());
    line("dim tau", r.dim_tau.to_string());
    line("center dim", r.center_dim.to_string());
    line("discrepancy", rat_string(&r.discrepancy));
    line(
        "essential candidate",
        if r.is_essential_candidate {
            "yes"
        } else {
            "no"
        }
        .to_string(),
    );
    line("level-one point", r.level_one.as_str().to_string());
    if let Some(vol) = &r.volume {
        line(
            "volume",
            format!(
                "{} (H={}, guarantee={})",
                rat_string(&vol.vol),
                vol.h_display,
                if vol.guarantee { "yes" } else { "no" }
            ),
        );
    }
    out
}

/// Human-readable rendering of a quotient report.
pub fn quotient_text(r: &QuotientReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        out.push_str(&format!("{k:<22}{v}\n"));
    };
    line("quotient", r.spec.join(" "));
    line("group order", r.group_order.to_string());
    line("lattice basis", vectors_text(&r.lattice_basis));
    line("normalized cone", vectors_text(&r.cone));
    if let Some(s) = r.singularity {
        line("singularity", s.to_string());
    }
    if let Some(c) = r.classification {
        line("classification", c.as_str().to_string());
    }
    if let Some(w) = &r.w_input {
        line("w (input coords)", vector_text(w));
    }
    if let Some(w) = &r.w_lattice {
        line("w (lattice coords)", vector_text(w));
    }
    if let Some(a) = &r.analysis {
        out.push('\n');
        out.push_str(&analysis_text(a));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::SimplicialCone;
    use crate::crit::analyze;
    use crate::limits::Limits;

    #[test]
    fn analysis_json_shape() {
        let cone = SimplicialCone::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]).unwrap();
        let report = analyze(&cone, &Vector::from_ints(&[1, 1, 1]), &Limits::default()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"dim_tau\":1"));
        assert!(json.contains("\"crit\":{\"1\":[[-1,0,1],[-1,1,0]]"));
        assert!(json.contains("\"discrepancy\":\"1/2\""));
        // canonical key order: cone first, then w
        assert!(json.starts_with("{\"cone\":[[1,0,0],[0,1,0],[1,1,2]],\"w\":[1,1,1]"));
        // byte stability
        assert_eq!(json, serde_json::to_string(&report).unwrap());
    }
}
