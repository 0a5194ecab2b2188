use crate::{input, CliError};
use itertools::Itertools;
use limitfiber::building::{convex_hull, incident, is_convex, LatticeClass};
use limitfiber::matroid::{
    aff_cohomology, central_decomposition, cross_ratio, cross_ratio_limit, dimension_audit, family_matroid,
    find_lax_order, is_unimodular, matroid_of, multiple_points, tiling_witness, verify_tiling, CentralWitness,
    MatroidDecomposition, MatroidError, PointConfiguration,
};
use limitfiber::membrane::{
    default_window, git_stable_classes, is_stable, limit_configuration, psi, stable_lattices, Arrangement,
};
use limitfiber::scalar::{series_expand, BaseField, ScalarK};
use limitfiber::specialfiber::{fiber_complex, limit_surface, SurfaceKind};
use limitfiber::tropical::verify_correspondence;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::collections::BTreeSet;

fn class_json(c: &LatticeClass) -> Value {
    json!(c.to_strings())
}

fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|i| i + 1).collect()
}

fn rats(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn pairs(xs: &[(usize, usize)]) -> Vec<[usize; 2]> {
    xs.iter().map(|&(a, b)| [a + 1, b + 1]).collect()
}

fn incident_pairs(cs: &[LatticeClass]) -> Result<Vec<(usize, usize)>, CliError> {
    let mut out = Vec::new();
    for (i, j) in (0..cs.len()).tuple_combinations() {
        if incident(&cs[i], &cs[j])? {
            out.push((i, j));
        }
    }
    Ok(out)
}

pub fn stab(f: &Arrangement) -> Result<Value, CliError> {
    let cs: Vec<LatticeClass> = stable_lattices(f)?.into_iter().collect();
    let edges = incident_pairs(&cs)?;
    let simplex = edges.len() == cs.len() * (cs.len().saturating_sub(1)) / 2;
    let classes: Vec<Value> = cs
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "id": i + 1, "class": class_json(c), "psi": psi(f, c.rep()) }))
        .collect();
    Ok(json!({
        "r": f.r,
        "n": f.n(),
        "count": cs.len(),
        "classes": classes,
        "edges": pairs(&edges),
        "simplex": simplex,
    }))
}

pub fn hull(v: &Value) -> Result<Value, CliError> {
    let r = input::usize_of(v, "r")?;
    let cs = input::classes(v.get("classes").ok_or_else(|| CliError::Parse("missing `classes`".into()))?, r)?;
    if cs.is_empty() {
        return Err(CliError::Parse("`classes` is empty".into()));
    }
    let h = convex_hull(&cs);
    let given: BTreeSet<&LatticeClass> = cs.iter().collect();
    let members: Vec<Value> = h.iter().map(|c| json!({ "class": class_json(c), "given": given.contains(c) })).collect();
    Ok(json!({ "r": r, "input": given.len(), "size": h.len(), "convex": is_convex(&h), "hull": members }))
}

fn decomposition_json(d: &MatroidDecomposition) -> Value {
    let ps: Vec<Value> = d
        .polytopes
        .iter()
        .map(|p| {
            let ineq: Vec<Value> = p
                .inequalities
                .iter()
                .map(|q| json!({ "set": one_based(&q.set), "op": if q.lower { ">=" } else { "<=" }, "rhs": q.rhs }))
                .collect();
            json!({
                "dim": p.dim(),
                "bases": p.matroid.basis_lists().iter().map(|b| one_based(b)).collect::<Vec<_>>(),
                "vertices": p.vertices,
                "inequalities": ineq,
            })
        })
        .collect();
    json!({
        "r": d.r,
        "n": d.n,
        "polytopes": ps,
        "adjacency": pairs(&d.adjacency),
        "volumes": d.volumes().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

fn verdicts(d: &MatroidDecomposition) -> Value {
    json!({
        "tiles": verify_tiling(d),
        "unimodular": is_unimodular(d),
        "witness": tiling_witness(d).map(|w| w.to_string()),
    })
}

pub fn gitstab(f: &Arrangement, window: i64) -> Result<Value, CliError> {
    let window = window.max(default_window(f)?);
    let cs: Vec<LatticeClass> = git_stable_classes(f, window)?.into_iter().collect();
    let mut classes = Vec::new();
    let mut ms = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        let m = matroid_of(&limit_configuration(f, c)?)?;
        classes.push(json!({
            "id": i + 1,
            "class": class_json(c),
            "psi": psi(f, c.rep()),
            "stable": is_stable(f, c)?,
            "git_stable": true,
        }));
        ms.push(m);
    }
    let ambient = family_matroid(f)?;
    let dependent: Vec<Vec<usize>> =
        (0..f.n()).combinations(f.r).filter(|t| !f.is_independent(t)).map(|t| one_based(&t)).collect();
    let d = MatroidDecomposition::within(ambient, ms);
    Ok(json!({
        "window": window,
        "hypersimplex": d.is_hypersimplex(),
        "dependent_subsets": dependent,
        "count": cs.len(),
        "classes": classes,
        "decomposition": decomposition_json(&d),
        "verdicts": verdicts(&d),
    }))
}

pub fn fiber(f: &Arrangement, v: &Value) -> Result<Value, CliError> {
    let y: BTreeSet<LatticeClass> = match v.get("Y").or_else(|| v.get("y")) {
        Some(ys) => input::classes(ys, f.r)?.into_iter().collect(),
        None => convex_hull(&stable_lattices(f)?.into_iter().collect::<Vec<_>>()),
    };
    let fc = fiber_complex(f, &y)?;
    let vertices: Vec<Value> = fc
        .vertices
        .iter()
        .zip(&fc.components)
        .enumerate()
        .map(|(i, (c, comp))| {
            let centers: Vec<Value> = comp
                .family
                .iter()
                .map(|rc| {
                    json!({
                        "dim": rc.subspace.dim(),
                        "depth": rc.depth,
                        "blown_up": rc.is_blown_up(),
                        "basis": rc.subspace.basis().iter().map(|b| rats(b)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({
                "id": i + 1,
                "class": class_json(c),
                "psi": psi(f, c.rep()),
                "residues": centers,
                "centers_disjoint": comp.centers_disjoint,
            })
        })
        .collect();
    let boundary: Vec<Value> =
        fc.boundary.iter().enumerate().map(|(i, vs)| json!({ "index": i + 1, "vertices": one_based(vs) })).collect();
    Ok(json!({
        "dim": fc.dim(),
        "vertices": vertices,
        "simplices": fc.simplices.iter().map(|s| one_based(s)).collect::<Vec<_>>(),
        "boundary": boundary,
    }))
}

pub fn surface(f: &Arrangement, window: i64) -> Result<Value, CliError> {
    let s = limit_surface(f, Some(window))?;
    let comps: Vec<Value> = s
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "id": i + 1,
                "class": class_json(&c.class),
                "model": match c.kind {
                    SurfaceKind::BlowupP2 => "blowup_p2",
                    SurfaceKind::P1xP1 => "p1xp1",
                },
                "blowup_count": c.blowup_points.len(),
                "blowup_points": c.blowup_points.iter().map(|p| rats(p)).collect::<Vec<_>>(),
                "special": c.special_flag,
            })
        })
        .collect();
    let germs: Vec<Value> = s
        .germs
        .iter()
        .map(|g| json!({ "id": g.id + 1, "kind": g.kind.to_string(), "components": one_based(&g.components) }))
        .collect();
    let boundary: Vec<Value> =
        s.boundary.iter().enumerate().map(|(i, cs)| json!({ "index": i + 1, "components": one_based(cs) })).collect();
    Ok(json!({
        "window": s.window,
        "components": comps,
        "edges": pairs(&s.edges),
        "germs": germs,
        "boundary": boundary,
    }))
}

pub fn trop_verify(f: &Arrangement, window: i64) -> Value {
    let rep = verify_correspondence(f, window);
    let witnesses: Vec<Value> =
        rep.witnesses.iter().map(|w| json!({ "w": w.w, "tropical": w.tropical, "membrane": w.membrane })).collect();
    json!({
        "window": window,
        "checked": rep.checked,
        "passed": rep.passed,
        "failed": rep.failed,
        "accepted": rep.accepted.len(),
        "witnesses": witnesses,
    })
}

pub fn audit(w: &CentralWitness) -> Result<Value, CliError> {
    let rep = dimension_audit(w)?;
    Ok(json!({
        "field": w.field.to_string(),
        "r": w.r,
        "n": w.covectors.len(),
        "sets": w.sets.len(),
        "dim_xc": rep.dim_xc,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "violates": rep.violates,
    }))
}

fn cohomology_json(d: &MatroidDecomposition) -> Value {
    let h = aff_cohomology(d);
    json!({
        "h0": h.h0,
        "h1_rank": h.h1_rank,
        "h1_torsion": h.h1_torsion.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "h1_vanishes": h.h1_vanishes(),
        "faces": h.faces,
    })
}

pub fn cohomology(d: &MatroidDecomposition) -> Value {
    json!({ "polytopes": d.polytopes.len(), "cohomology": cohomology_json(d), "verdicts": verdicts(d) })
}

pub fn lax(c: &PointConfiguration) -> Value {
    let order = find_lax_order(c);
    let pts: Vec<Value> = multiple_points(c, c.r() + 1)
        .iter()
        .map(|(p, on)| json!({ "point": rats(p), "hyperplanes": one_based(on) }))
        .collect();
    json!({
        "field": c.field.to_string(),
        "lax": order.is_some(),
        "order": order.map(|o| one_based(&o)),
        "heavy_points": pts,
    })
}

pub fn central(v: &Value) -> Result<Value, CliError> {
    let r = input::usize_of(v, "r")?;
    let n = match v.get("covectors").and_then(Value::as_array) {
        Some(c) if v.get("n").is_none() => c.len(),
        _ => input::usize_of(v, "n")?,
    };
    let sets = input::index_sets(v.get("sets").ok_or_else(|| CliError::Parse("missing `sets`".into()))?, n)?;
    let d = central_decomposition(&sets, r, n)?;
    Ok(json!({
        "decomposition": decomposition_json(&d),
        "cohomology": cohomology_json(&d),
        "verdicts": verdicts(&d),
    }))
}

fn series_json(s: &ScalarK, prec: usize) -> Vec<[String; 2]> {
    series_expand(s, prec).into_iter().map(|(e, c)| [e.to_string(), c.to_string()]).collect()
}

fn one_ratio(f: &Arrangement, v: [usize; 4], w: &[usize], prec: usize) -> Value {
    let head = json!({ "indices": one_based(&v), "others": one_based(w) });
    let mut out = match (cross_ratio(&f.vectors, v, w), cross_ratio_limit(&f.vectors, v, w)) {
        (Ok(x), Ok(l)) => json!({
            "value": x.to_string(),
            "series": series_json(&x, prec),
            "limit": l.to_string(),
            "degenerate": l.is_degenerate(),
        }),
        (Err(MatroidError::IndeterminateCR), Ok(l)) => {
            json!({ "value": "inf", "limit": l.to_string(), "degenerate": l.is_degenerate() })
        }
        (_, Err(MatroidError::IndeterminateCR)) => json!({ "value": "indeterminate" }),
        (Err(e), _) | (_, Err(e)) => json!({ "error": e.to_string() }),
    };
    out.as_object_mut().unwrap().extend(head.as_object().unwrap().clone());
    out
}

/// With `indices` (and `others` when r > 2) one cross-ratio; otherwise
/// every 4-subset against every complementary (r-2)-subset.
pub fn crossratio(v: &Value, prec: usize) -> Result<Value, CliError> {
    let f = input::arrangement(v, Some(BaseField::Rationals))?;
    let n = f.n();
    if f.r < 2 || n < f.r + 2 {
        return Err(CliError::Parse("cross-ratios need r >= 2 and n >= r + 2".into()));
    }
    if let Some(ix) = v.get("indices") {
        let ix = input::index_list(ix, n)?;
        let w = match v.get("others") {
            Some(o) => input::index_list(o, n)?,
            None => Vec::new(),
        };
        let arr: [usize; 4] = ix.try_into().map_err(|_| CliError::Parse("`indices` needs four entries".into()))?;
        let (x, l) = (cross_ratio(&f.vectors, arr, &w), cross_ratio_limit(&f.vectors, arr, &w));
        if let Err(e) = l {
            return Err(e.into());
        }
        if let Err(e @ MatroidError::Invalid(_)) = x {
            return Err(e.into());
        }
        return Ok(one_ratio(&f, arr, &w, prec));
    }
    let mut all = Vec::new();
    for q in (0..n).combinations(4) {
        let rest: Vec<usize> = (0..n).filter(|i| !q.contains(i)).collect();
        for w in rest.into_iter().combinations(f.r - 2) {
            all.push(one_ratio(&f, [q[0], q[1], q[2], q[3]], &w, prec));
        }
    }
    Ok(json!({ "r": f.r, "n": n, "cross_ratios": all }))
}
