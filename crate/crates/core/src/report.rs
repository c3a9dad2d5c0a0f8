//! Machine-readable reports: a versioned JSON document (schema 1) plus a
//! CSV summary of solutions. Serialization is struct-ordered and free of
//! timestamps, so reports are byte-stable for a fixed config and seed.

use serde::Serialize;

use crate::certify::{BoundEval, CertReport};
use crate::config::Instance;
use crate::solver::{SolutionRecord, VolochMode, VolochReport};
use crate::wn::WindowReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct ReportDoc {
    pub schema: u32,
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceMeta>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumerationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub voloch: Option<VolochJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<CertReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<IdentitiesJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsJson>,
}

impl ReportDoc {
    pub fn new(command: &str, seed: u64) -> Self {
        ReportDoc {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            seed,
            instance: None,
            enumeration: None,
            voloch: None,
            certification: None,
            identities: None,
            bounds: None,
        }
    }

    /// Canonical bytes: pretty JSON plus a trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("report serializes");
        bytes.push(b'\n');
        bytes
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceMeta {
    pub name: String,
    pub p: u64,
    pub k: usize,
    pub modulus: Vec<u64>,
    pub free_gens: Vec<[String; 2]>,
    pub torsion_gens: Vec<[String; 2]>,
    pub rank: usize,
    pub support: Vec<String>,
    pub torsion_order: usize,
    pub a: String,
    pub b: String,
    pub bound: i64,
    pub budget: u64,
    pub candidates: String,
}

impl InstanceMeta {
    pub fn from_instance(inst: &Instance) -> Self {
        let group = &inst.group;
        InstanceMeta {
            name: inst.name.clone(),
            p: inst.field.p(),
            k: inst.field.k(),
            modulus: inst.field.modulus().to_vec(),
            free_gens: group
                .free_gens()
                .iter()
                .map(|(x, y)| [x.to_string(), y.to_string()])
                .collect(),
            torsion_gens: group
                .torsion_gens()
                .iter()
                .map(|(c, d)| [c.to_string(), d.to_string()])
                .collect(),
            rank: group.rank(),
            support: group.support().iter().map(|p| p.to_string()).collect(),
            torsion_order: group.torsion().len(),
            a: inst.a.to_string(),
            b: inst.b.to_string(),
            bound: inst.search.bound,
            budget: inst.search.budget,
            candidates: inst.search.candidates(group).to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RecordJson {
    pub exponents: Vec<i64>,
    pub torsion_index: usize,
    pub x: String,
    pub y: String,
    pub height: u64,
    pub phi_first: Vec<i64>,
    pub phi_second: Vec<i64>,
    pub is_torsion: bool,
    pub is_primitive: bool,
    pub coords_in_kp: bool,
    pub constant_case: bool,
}

impl RecordJson {
    pub fn from_record(rec: &SolutionRecord) -> Self {
        RecordJson {
            exponents: rec.elem.exponents().to_vec(),
            torsion_index: rec.elem.torsion_index(),
            x: rec.x.to_string(),
            y: rec.y.to_string(),
            height: rec.height.0,
            phi_first: rec.phi.first.clone(),
            phi_second: rec.phi.second.clone(),
            is_torsion: rec.is_torsion,
            is_primitive: rec.is_primitive,
            coords_in_kp: rec.coords_in_kp,
            constant_case: rec.constant_case,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationJson {
    /// Completeness is claimed only relative to the searched box; no
    /// effective height bound certifies completeness beyond it.
    pub complete_relative_to_box: bool,
    pub note: String,
    pub records: Vec<RecordJson>,
}

impl EnumerationJson {
    pub fn from_records(records: &[SolutionRecord]) -> Self {
        EnumerationJson {
            complete_relative_to_box: true,
            note: "solution list is complete relative to the searched exponent box only"
                .to_string(),
            records: records.iter().map(RecordJson::from_record).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub n: u64,
    pub exponents: Vec<i64>,
    pub torsion_index: usize,
    pub coprime_to_p: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VolochJson {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    pub solution_count: usize,
    pub bound: String,
    pub bound_claimed: bool,
    pub within_bound: bool,
    pub constant_case_count: usize,
}

impl VolochJson {
    pub fn from_report(report: &VolochReport) -> Self {
        VolochJson {
            mode: match report.mode {
                VolochMode::Unit => "unit",
                VolochMode::Excluded => "excluded",
                VolochMode::Bounded => "bounded",
            }
            .to_string(),
            certificate: report.certificate.as_ref().map(|c| CertificateJson {
                n: c.n,
                exponents: c.exponents.clone(),
                torsion_index: c.torsion_index,
                coprime_to_p: c.coprime_to_p,
            }),
            solution_count: report.records.len(),
            bound: report.bound.to_string(),
            bound_claimed: report.bound_claimed,
            within_bound: report.within_bound,
            constant_case_count: report.constant_case_count,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityRow {
    pub n: usize,
    pub antisymmetry: bool,
    pub syzygy: bool,
    pub cn: String,
    pub wn_at_2_minus_1: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitiesJson {
    pub nmax: usize,
    pub rows: Vec<IdentityRow>,
    pub windows: Vec<WindowReport>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsJson {
    pub requested: BoundEval,
    pub limit_table: Vec<BoundEval>,
}

/// The solutions.csv summary: one row per solution.
pub fn solutions_csv(records: &[SolutionRecord]) -> String {
    let mut out = String::from("exponents,torsion,x,y,height,primitive,in_Kp\n");
    for rec in records {
        let exponents = rec
            .elem
            .exponents()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let x = rec.x.to_string();
        let y = rec.y.to_string();
        debug_assert!(!x.contains(',') && !y.contains(','));
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            exponents,
            rec.elem.torsion_index(),
            x,
            y,
            rec.height.0,
            rec.is_primitive,
            rec.coords_in_kp
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::InstanceConfig;
    use crate::solver::enumerate_solutions;

    const REFERENCE: &str = r#"
name = "f5-reference"

[field]
p = 5

[group]
free_gens = [["t", "1-t"]]

[search]
bound = 6
"#;

    #[test]
    fn report_bytes_are_stable() {
        let inst = InstanceConfig::from_toml(REFERENCE)
            .unwrap()
            .build()
            .unwrap();
        let records = enumerate_solutions(&inst.group, &inst.search).unwrap();
        let build = || {
            let mut doc = ReportDoc::new("enumerate", 0);
            doc.instance = Some(InstanceMeta::from_instance(&inst));
            doc.enumeration = Some(EnumerationJson::from_records(&records));
            doc.to_bytes()
        };
        assert_eq!(build(), build());
        let text = String::from_utf8(build()).unwrap();
        assert!(text.contains("\"schema\": 1"));
        assert!(text.contains("\"support\""));
    }

    #[test]
    fn csv_columns() {
        let inst = InstanceConfig::from_toml(REFERENCE)
            .unwrap()
            .build()
            .unwrap();
        let records = enumerate_solutions(&inst.group, &inst.search).unwrap();
        let csv = solutions_csv(&records);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "exponents,torsion,x,y,height,primitive,in_Kp"
        );
        assert_eq!(lines.count(), records.len());
        assert!(csv.contains("1,0,t,1-t,1,true,false"));
    }
}
