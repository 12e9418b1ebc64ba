use std::path::Path;

use reidemeister::algebra::{FieldElement, FieldTag, Matrix};
use reidemeister::charpts::{adjoint_torsion_volume, glued_point_check, scaling_laws_check};
use reidemeister::cw::{check_complex, euler_characteristic, h1, CellComplex, FundamentalFamily};
use reidemeister::graded::{homology, homology_dims, GradedBasis};
use reidemeister::local::{specialize, LocalSystem};
use reidemeister::series::{duflo_determinant_check, j_series};
use reidemeister::surface::{arf, johnson_q, sign_vectors, SurfaceModel};
use reidemeister::torsion::{acyclic_torsion, refined_torsion, HomologyOrientation};
use serde_json::{json, Value};

use crate::schema::{self, ComplexFile};
use crate::{CliError, Command, TwistFlags};

fn invalid(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(format!("{what}: {e}"))
}

fn matrix_json(m: &Matrix) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Basis vectors as columns, one matrix per degree starting at `lo`.
fn basis_json(h: &GradedBasis) -> Value {
    json!({ "lo": h.lo, "columns": h.vectors.iter().map(|m| matrix_json(&m.transpose())).collect::<Vec<_>>() })
}

fn family_json(c: &CellComplex, e: &FundamentalFamily) -> Value {
    let mut shifts = Vec::new();
    for (d, row) in e.shifts.iter().enumerate() {
        for (i, w) in row.iter().enumerate() {
            if !w.is_identity() {
                shifts.push(json!({ "cell": c.cells(d)[i], "word": c.presentation().format_word(w) }));
            }
        }
    }
    json!(shifts)
}

fn orientation(s: &str) -> Result<HomologyOrientation, CliError> {
    match s {
        "+" | "+1" => Ok(HomologyOrientation::POSITIVE),
        "-" | "-1" => Ok(HomologyOrientation::POSITIVE.flipped()),
        _ => Err(CliError::Invalid(format!("orientation must be + or -, got '{s}'"))),
    }
}

fn sign_text(o: HomologyOrientation) -> &'static str {
    if o.sign > 0 {
        "+"
    } else {
        "-"
    }
}

fn field(s: &Option<String>) -> Result<Option<FieldTag>, CliError> {
    s.as_deref().map(schema::field_tag).transpose()
}

fn load_complex(path: &Path) -> Result<(ComplexFile, CellComplex), CliError> {
    let f = schema::read_complex(path)?;
    let c = schema::build_complex(&f)?;
    Ok((f, c))
}

pub fn dispatch(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Check { complex, localsys, field: fld } => check(complex, localsys.as_deref(), &field(fld)?),
        Command::Torsion { complex, localsys, flags } => torsion(complex, localsys, flags),
        Command::AdjointTorsion { complex, representation, flags } => adjoint(complex, representation, flags),
        Command::Johnson { surface, spin, alpha } => johnson(surface, spin, alpha.as_deref()),
        Command::Arf { surface, spin } => arf_cmd(surface, spin),
        Command::Todd { order } => todd(*order),
        Command::GlueCheck { glue, representation } => glue_check(glue, representation),
    }
}

fn check(path: &Path, localsys: Option<&Path>, fld: &Option<FieldTag>) -> Result<Value, CliError> {
    let (_, c) = load_complex(path)?;
    let report = check_complex(&c).map_err(|e| invalid("check", e))?;
    let names = c.presentation().generators().to_vec();
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| json!({ "cell": f.cell, "dim": f.dim, "residual": f.residual }))
        .collect();
    let hh = h1(&c);
    let mut out = json!({
        "command": "check",
        "generators": names,
        "cell_counts": c.all_cells().iter().map(Vec::len).collect::<Vec<_>>(),
        "euler_characteristic": euler_characteristic(&c),
        "h1": { "rank": hh.rank(), "torsion": hh.torsion() },
        "boundary_squared_vanishes": report.passed(),
        "failures": failures,
        "status": if report.passed() { "ok" } else { "failed" },
    });
    if let Some(lp) = localsys {
        let lf = schema::read_localsys(lp)?;
        let rho = schema::build_localsys(&lf, c.presentation(), *fld)?;
        let b = specialize(&c, &rho).map_err(|e| invalid("specialize", e))?;
        out["localsys"] = json!({
            "dimension": rho.dim(),
            "field": rho.tag().to_string(),
            "chain_ranks": b.ranks(),
            "homology_dims": homology_dims(&b),
        });
    }
    Ok(out)
}

fn torsion(cp: &Path, lp: &Path, flags: &TwistFlags) -> Result<Value, CliError> {
    let (cf, c) = load_complex(cp)?;
    if !check_complex(&c).map_err(|e| invalid("check", e))?.passed() {
        return Err(CliError::Invalid("boundary of boundary is nonzero; run `check` for details".into()));
    }
    let lf = schema::read_localsys(lp)?;
    let rho = schema::build_localsys(&lf, c.presentation(), field(&flags.field)?)?;
    let e = schema::build_family(&cf, &c, &flags.euler)?;
    let o = orientation(&flags.orient)?;
    let b = specialize(&c, &rho).map_err(|e| invalid("specialize", e))?;
    let dims = homology_dims(&b);
    let acyclic = dims.iter().all(|&d| d == 0);
    let h = if acyclic { GradedBasis::empty(&b) } else { homology(&b) };
    let tau = refined_torsion(&c, &rho, &e, o, &h).map_err(|e| invalid("torsion", e))?;
    Ok(json!({
        "command": "torsion",
        "value": tau.value.to_string(),
        "field": rho.tag().to_string(),
        "rank": tau.rank,
        "acyclic": acyclic,
        "homology_dims": dims,
        "homology_basis": if acyclic { Value::Null } else { basis_json(&h) },
        "euler": { "name": flags.euler, "shifts": family_json(&c, &e) },
        "orientation": sign_text(o),
        "status": "ok",
    }))
}

fn adjoint(cp: &Path, rp: &Path, flags: &TwistFlags) -> Result<Value, CliError> {
    let (cf, c) = load_complex(cp)?;
    let rf = schema::read_representation(rp)?;
    let pt = schema::build_representation(&rf, field(&flags.field)?)?;
    if &pt.group != c.presentation() {
        return Err(CliError::Invalid("representation and complex have different presentations".into()));
    }
    let e = schema::build_family(&cf, &c, &flags.euler)?;
    let o = orientation(&flags.orient)?;
    let r = adjoint_torsion_volume(&c, &pt, &e, o, None).map_err(|e| invalid("adjoint torsion", e))?;
    let ad = pt.adjoint_system().map_err(|e| invalid("adjoint", e))?;
    let dims = homology_dims(&specialize(&c, &ad).map_err(|e| invalid("specialize", e))?);
    let laws = scaling_laws_check(&c, &pt, &e, o).map_err(|e| invalid("scaling laws", e))?;
    Ok(json!({
        "command": "adjoint-torsion",
        "value": r.torsion.value.to_string(),
        "virtual_dimension": r.virtual_dimension,
        "lie_dimension": pt.lie_dimension(),
        "homology_dims": dims,
        "homology_basis": basis_json(&r.torsion.homology_basis),
        "euler": { "name": flags.euler, "shifts": family_json(&c, &e) },
        "orientation": sign_text(o),
        "scaling_laws": {
            "euler_characteristic": laws.euler_characteristic,
            "rescale": laws.rescale.iter().map(|l| json!({
                "factor": l.factor.to_string(), "scaled": l.scaled.to_string(), "holds": l.holds,
            })).collect::<Vec<_>>(),
            "euler_changes": laws.euler.iter().map(|l| json!({
                "holonomy": l.holonomy.to_string(), "direct": l.direct.to_string(), "holds": l.holds,
            })).collect::<Vec<_>>(),
            "holds": laws.holds,
        },
        "status": if laws.holds { "ok" } else { "failed" },
    }))
}

fn load_surface(sp: &Path, spin: &Path) -> Result<(SurfaceModel, reidemeister::surface::SpinStructure), CliError> {
    let m = schema::build_surface(&schema::read_surface(sp)?)?;
    let s = schema::build_spin(&schema::read_spin(spin)?, &m)?;
    Ok((m, s))
}

fn parse_alpha(s: &str, n: usize) -> Result<Vec<i64>, CliError> {
    let a = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Invalid(format!("bad sign '{x}' in --alpha"))))
        .collect::<Result<Vec<_>, _>>()?;
    if a.len() != n || a.iter().any(|x| x.abs() != 1) {
        return Err(CliError::Invalid(format!("--alpha needs {n} signs ±1")));
    }
    Ok(a)
}

fn q_table(m: &SurfaceModel, s: &reidemeister::surface::SpinStructure, alphas: &[Vec<i64>]) -> Result<Vec<Value>, CliError> {
    alphas
        .iter()
        .map(|a| Ok(json!({ "alpha": a, "q": johnson_q(m, s, a).map_err(|e| invalid("johnson", e))? })))
        .collect()
}

fn johnson(sp: &Path, spin: &Path, alpha: Option<&str>) -> Result<Value, CliError> {
    let (m, s) = load_surface(sp, spin)?;
    let n = m.complex.presentation().generator_count();
    let alphas = match alpha {
        Some(a) => vec![parse_alpha(a, n)?],
        None => sign_vectors(n),
    };
    Ok(json!({
        "command": "johnson",
        "generators": m.complex.presentation().generators(),
        "genus": m.genus,
        "values": q_table(&m, &s, &alphas)?,
        "status": "ok",
    }))
}

fn arf_cmd(sp: &Path, spin: &Path) -> Result<Value, CliError> {
    let (m, s) = load_surface(sp, spin)?;
    if !m.is_one_vertex() {
        return Err(CliError::Invalid("arf needs the one-vertex surface model".into()));
    }
    let a = arf(&m, &s).map_err(|e| invalid("arf", e))?;
    let n = m.complex.presentation().generator_count();
    Ok(json!({
        "command": "arf",
        "genus": m.genus,
        "arf": a,
        "parity": if a == 1 { "even" } else { "odd" },
        "values": q_table(&m, &s, &sign_vectors(n))?,
        "status": "ok",
    }))
}

fn todd(order: usize) -> Result<Value, CliError> {
    if order == 0 {
        return Err(CliError::Invalid("--order must be positive".into()));
    }
    let j = j_series(order);
    let r = duflo_determinant_check(order).map_err(|e| invalid("duflo check", e))?;
    Ok(json!({
        "command": "todd",
        "order": order,
        "coefficients": j.coeffs().iter().map(|c| FieldElement::Q(c.clone()).to_string()).collect::<Vec<_>>(),
        "determinant_check": {
            "equals_j": r.equals_j,
            "squares_vanish": r.squares_vanish,
            "contracting": r.contracting,
            "inverse_verified": r.inverse_verified,
            "even_det_is_inverse": r.even_det_is_inverse,
            "holds": r.holds,
        },
        "status": if r.holds { "ok" } else { "failed" },
    }))
}

fn glue_check(gp: &Path, rp: &Path) -> Result<Value, CliError> {
    let g = schema::build_glue(&schema::read_glue(gp)?)?;
    let pt = schema::build_representation(&schema::read_representation(rp)?, None)?;
    let r = glued_point_check(&g.first, &g.second, &g.common, &g.data, &pt).map_err(|e| invalid("glue", e))?;
    let passed = check_complex(&r.glued).map_err(|e| invalid("check", e))?.passed();
    let [x1, x2, x0, x] = r.euler_characteristics;
    let mv = &r.mayer_vietoris;
    let mut out = json!({
        "command": "glue-check",
        "glued_cells": r.glued.all_cells(),
        "glued_is_complex": passed,
        "euler_characteristics": { "first": x1, "second": x2, "common": x0, "glued": x },
        "glued_homology_dims": r.glued_homology,
        // unrefined torsions of the based chain complexes in the sequence
        "mayer_vietoris": {
            "chain_torsions": {
                "common": mv.tau_a.to_string(),
                "pieces": mv.tau_b.to_string(),
                "glued": mv.tau_c.to_string(),
                "homology_sequence": mv.tau_les.to_string(),
            },
            "basis_change": mv.basis_change.to_string(),
            "sign": mv.sign,
            "holds": mv.holds,
        },
    });
    let mut holds = r.holds && passed && x == x1 + x2 - x0;
    if let Some(direct) = &g.direct {
        let ad = pt.adjoint_system().map_err(|e| invalid("adjoint", e))?;
        out["direct"] = match direct_comparison(&r.glued, direct, &ad) {
            Some((a, b)) => {
                holds &= a == b;
                json!({ "glued": a.to_string(), "direct": b.to_string(), "equal": a == b })
            }
            None => json!({ "skipped": "adjoint system is not acyclic" }),
        };
    }
    out["status"] = json!(if holds { "ok" } else { "failed" });
    Ok(out)
}

fn direct_comparison(glued: &CellComplex, direct: &CellComplex, ad: &LocalSystem) -> Option<(FieldElement, FieldElement)> {
    let o = HomologyOrientation::POSITIVE;
    let a = acyclic_torsion(glued, ad, o).ok()?.value;
    let b = acyclic_torsion(direct, ad, o).ok()?.value;
    Some((a, b))
}
