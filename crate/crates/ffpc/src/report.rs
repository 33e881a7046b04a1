//! Report structures and writers. Every run echoes its fully-resolved
//! job specification; values that can exceed native integers are
//! serialized as decimal strings; all writers are deterministic so that
//! identical job specifications produce byte-identical output.

use num_bigint::BigInt;
use serde::Serialize;

use crate::counting::{Verdict, VerdictTable, WitnessReport};

pub const SCHEMA: &str = "ffpc/1";

/// Fully-resolved run parameters, echoed into every output header.
#[derive(Clone, Debug, Serialize)]
pub struct JobSpec {
    pub schema: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub format: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
}

impl JobSpec {
    pub fn new(command: &str, format: &str, seed: u64) -> JobSpec {
        JobSpec {
            schema: SCHEMA,
            command: command.to_string(),
            field: None,
            ell: None,
            n: None,
            t: None,
            method: None,
            format: format.to_string(),
            seed,
            budget: None,
            n_max: None,
            sweep_max: None,
            lambdas: None,
            index: None,
            p: None,
            suite: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
}

/// One exact count, with the method used and any attached checks.
#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub field: String,
    pub p: u64,
    pub r: u32,
    pub n: u32,
    pub ell: u32,
    pub t: String,
    pub kind: String,
    /// decimal string; values overflow native integers routinely
    pub value: String,
    pub method: String,
    pub checks: Vec<CheckEntry>,
}

#[derive(Serialize)]
pub struct CountEnvelope<'a> {
    pub schema: &'static str,
    pub jobspec: &'a JobSpec,
    pub results: &'a [CountReport],
}

#[derive(Serialize)]
pub struct VerdictEnvelope<'a> {
    pub schema: &'static str,
    pub jobspec: &'a JobSpec,
    pub pass: bool,
    pub tables: &'a [VerdictTable],
}

#[derive(Serialize)]
pub struct WitnessEnvelope<'a> {
    pub schema: &'static str,
    pub jobspec: &'a JobSpec,
    pub witness: &'a WitnessReport,
}

/// Exact L-data of one character, for the lfunc command.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterReport {
    pub field: String,
    pub ell: u32,
    pub index: u64,
    /// "trivial" (L = 1/(1-qu)), or "polynomial"
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<String>,
    pub coefficient_order: u32,
    pub l_coefficients: Vec<String>,
    pub degree: usize,
    pub inverse_roots: Vec<(f64, f64)>,
    pub rh_numeric: bool,
    pub sweep_max: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_unity_order: Option<u64>,
}

#[derive(Serialize)]
pub struct CharacterEnvelope<'a> {
    pub schema: &'static str,
    pub jobspec: &'a JobSpec,
    pub character: &'a CharacterReport,
}

/// Assemble the exact L-data report of one character.
pub fn build_character_report(
    chi: &crate::characters::Character,
    sweep_max: u64,
) -> crate::error::Result<CharacterReport> {
    use crate::characters::{fomenko_epsilon, recover_lambdas};
    use crate::lfunction::{
        check_rh_numeric, inverse_roots_numeric, l_polynomial, minimal_unity_order,
    };

    let group = chi.group().clone();
    let field = group.field().clone();
    let level = group.level();
    if chi.is_trivial() {
        return Ok(CharacterReport {
            field: field.spec_string(),
            ell: level,
            index: 0,
            kind: "trivial".into(),
            primitive: None,
            epsilon: None,
            lambdas: None,
            coefficient_order: 1,
            l_coefficients: Vec::new(),
            degree: 0,
            inverse_roots: Vec::new(),
            rh_numeric: true,
            sweep_max,
            minimal_unity_order: None,
        });
    }
    let l = l_polynomial(chi)?;
    let epsilon = if field.p() == 2 && level == 3 {
        let (a, b) = fomenko_epsilon(chi)?;
        Some((a.encoding(), b.encoding()))
    } else {
        None
    };
    let lambdas = if field.p() > level as u64 {
        let ls = match chi.lambdas() {
            Some(ls) => ls.to_vec(),
            None => recover_lambdas(chi)?,
        };
        Some(
            ls.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
        )
    } else {
        None
    };
    let minimal = if l.degree() >= 1 {
        minimal_unity_order(field.q(), &l, sweep_max)?
    } else {
        None
    };
    Ok(CharacterReport {
        field: field.spec_string(),
        ell: level,
        index: chi.index(),
        kind: "polynomial".into(),
        primitive: if level >= 1 {
            Some(chi.is_primitive()?)
        } else {
            None
        },
        epsilon,
        lambdas,
        coefficient_order: l.order(),
        l_coefficients: (0..=l.degree()).map(|j| l.coeff(j).display()).collect(),
        degree: l.degree(),
        inverse_roots: inverse_roots_numeric(&l)
            .into_iter()
            .map(|z| (z.re, z.im))
            .collect(),
        rh_numeric: check_rh_numeric(field.q(), &l),
        sweep_max,
        minimal_unity_order: minimal,
    })
}

pub fn big_to_string(v: &BigInt) -> String {
    v.to_str_radix(10)
}

// ---------------------------------------------------------------------
// Writers.

pub fn counts_to_json(jobspec: &JobSpec, results: &[CountReport]) -> String {
    let env = CountEnvelope {
        schema: SCHEMA,
        jobspec,
        results,
    };
    serde_json::to_string_pretty(&env).expect("serializable") + "\n"
}

/// CSV with the schema field,p,r,n,ell,t,psi,pi — psi and pi columns are
/// filled per row kind, the other left empty. The jobspec rides in a
/// leading comment line.
pub fn counts_to_csv(jobspec: &JobSpec, results: &[CountReport]) -> String {
    let mut out = format!(
        "# {}\nfield,p,r,n,ell,t,psi,pi\n",
        serde_json::to_string(jobspec).expect("serializable")
    );
    for r in results {
        let (psi, pi) = if r.kind == "psi" {
            (r.value.as_str(), "")
        } else {
            ("", r.value.as_str())
        };
        out.push_str(&format!(
            "{},{},{},{},{},\"{}\",{},{}\n",
            r.field, r.p, r.r, r.n, r.ell, r.t, psi, pi
        ));
    }
    out
}

/// Combined psi+pi CSV used by the table command: one row per (n, t).
pub fn table_to_csv(jobspec: &JobSpec, rows: &[(CountReport, CountReport)]) -> String {
    let mut out = format!(
        "# {}\nfield,p,r,n,ell,t,psi,pi\n",
        serde_json::to_string(jobspec).expect("serializable")
    );
    for (psi, pi) in rows {
        debug_assert_eq!(psi.kind, "psi");
        debug_assert_eq!(pi.kind, "pi");
        out.push_str(&format!(
            "{},{},{},{},{},\"{}\",{},{}\n",
            psi.field, psi.p, psi.r, psi.n, psi.ell, psi.t, psi.value, pi.value
        ));
    }
    out
}

pub fn counts_to_text(jobspec: &JobSpec, results: &[CountReport]) -> String {
    let mut out = format!(
        "# {}\n",
        serde_json::to_string(jobspec).expect("serializable")
    );
    for r in results {
        out.push_str(&format!(
            "{}(n={}, t=[{}]) over {} = {}   [{}]",
            r.kind, r.n, r.t, r.field, r.value, r.method
        ));
        for c in &r.checks {
            out.push_str(&format!(" {}={}", c.name, if c.pass { "pass" } else { "FAIL" }));
        }
        out.push('\n');
    }
    out
}

pub fn verdicts_to_json(jobspec: &JobSpec, tables: &[VerdictTable]) -> String {
    let env = VerdictEnvelope {
        schema: SCHEMA,
        jobspec,
        pass: tables.iter().all(|t| t.all_pass()),
        tables,
    };
    serde_json::to_string_pretty(&env).expect("serializable") + "\n"
}

pub fn verdicts_to_text(jobspec: &JobSpec, tables: &[VerdictTable]) -> String {
    let mut out = format!(
        "# {}\n",
        serde_json::to_string(jobspec).expect("serializable")
    );
    for t in tables {
        out.push_str(&format!("suite {} over {}\n", t.suite, t.field));
        for v in &t.verdicts {
            write_verdict_line(&mut out, v);
        }
        out.push_str(&format!(
            "suite {}: {}\n",
            t.suite,
            if t.all_pass() { "PASS" } else { "FAIL" }
        ));
    }
    out
}

fn write_verdict_line(out: &mut String, v: &Verdict) {
    out.push_str(&format!(
        "  [{}] {}{}\n",
        if v.pass { "pass" } else { "FAIL" },
        v.name,
        if v.detail.is_empty() {
            String::new()
        } else {
            format!(" ({})", v.detail)
        }
    ));
}

pub fn witness_to_json(jobspec: &JobSpec, witness: &WitnessReport) -> String {
    let env = WitnessEnvelope {
        schema: SCHEMA,
        jobspec,
        witness,
    };
    serde_json::to_string_pretty(&env).expect("serializable") + "\n"
}

pub fn witness_to_text(jobspec: &JobSpec, w: &WitnessReport) -> String {
    let mut out = format!(
        "# {}\n",
        serde_json::to_string(jobspec).expect("serializable")
    );
    out.push_str(&format!(
        "witness character for p = {}, level = {}: {}\n",
        w.p, w.level, w.construction
    ));
    out.push_str(&format!(
        "L-coefficients (in Z[w_{}], c_0..c_d): {}\n",
        w.coefficient_order,
        w.l_coefficients.join(" | ")
    ));
    if let Some(m) = w.coefficients_match_closed_form {
        out.push_str(&format!("closed-form coefficients match: {m}\n"));
    }
    out.push_str(&format!("numeric |root| = sqrt(q) for all roots: {}\n", w.rh_numeric));
    for (re, im) in &w.inverse_roots {
        out.push_str(&format!("  inverse root {re:+.12e} {im:+.12e}i\n"));
    }
    out.push_str(&match w.minimal_unity_order {
        Some(n) => format!("minimal even unity order: {n}\n"),
        None => format!(
            "no even N <= {} makes the normalized roots N-th roots of unity\n",
            w.sweep_max
        ),
    });
    out
}

pub fn character_to_json(jobspec: &JobSpec, c: &CharacterReport) -> String {
    let env = CharacterEnvelope {
        schema: SCHEMA,
        jobspec,
        character: c,
    };
    serde_json::to_string_pretty(&env).expect("serializable") + "\n"
}

pub fn character_to_text(jobspec: &JobSpec, c: &CharacterReport) -> String {
    let mut out = format!(
        "# {}\n",
        serde_json::to_string(jobspec).expect("serializable")
    );
    out.push_str(&format!(
        "character #{} of level {} over {}\n",
        c.index, c.ell, c.field
    ));
    if c.kind == "trivial" {
        out.push_str("L(u) = 1/(1-qu)   [trivial character]\n");
        return out;
    }
    if let Some(p) = c.primitive {
        out.push_str(&format!("primitive: {p}\n"));
    }
    if let Some((l, m)) = c.epsilon {
        out.push_str(&format!("epsilon = ({l}, {m})\n"));
    }
    if let Some(l) = &c.lambdas {
        out.push_str(&format!("lambda vector = [{l}]\n"));
    }
    out.push_str(&format!(
        "L degree {} with coefficients in Z[w_{}]:\n",
        c.degree, c.coefficient_order
    ));
    for (j, coeff) in c.l_coefficients.iter().enumerate() {
        out.push_str(&format!("  c_{j} = {coeff}\n"));
    }
    for (re, im) in &c.inverse_roots {
        out.push_str(&format!("  inverse root {re:+.12e} {im:+.12e}i\n"));
    }
    out.push_str(&format!("numeric |root| = sqrt(q): {}\n", c.rh_numeric));
    out.push_str(&match c.minimal_unity_order {
        Some(n) => format!("minimal even unity order: {n}\n"),
        None => format!("no even unity order <= {}\n", c.sweep_max),
    });
    out
}
