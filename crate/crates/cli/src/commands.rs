use birat::ambient::{analyze_ambient, blowup_ambient, run_two_ray_game, WciSpec};
use birat::links::{classify_links, construct_link_sigma, normal_form_x1214, x1214_ambient, ClassifyOptions};
use birat::qpoly::{Ring, WeightVector};
use birat::singular::{quasismooth_check, singularity_census, weighted_blowup_discrepancy, Germ, Location, SingularError};
use serde_json::json;

use crate::error::CliError;
use crate::input::{FieldSpec, InputSpec};
use crate::report::Report;

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub samples: usize,
    pub trials: u32,
    pub field: FieldSpec,
    pub parallel: bool,
}

#[derive(Clone, Debug)]
pub struct Center {
    pub point: String,
    pub weights: Vec<i64>,
    pub denominator: Option<i64>,
}

fn degrees(v: &WciSpec) -> Vec<i64> {
    v.degrees.iter().map(|d| d[0]).collect()
}

pub fn analyze(input: &InputSpec, o: &Options, r: &mut Report) -> Result<(), CliError> {
    let v = input.variety(o.field, o.seed)?;
    r.push("ambient", &analyze_ambient(&input.wps()?, &degrees(&v))?)?;
    r.push("census", &singularity_census(&v, o.samples, o.seed, o.field.prime())?)?;
    Ok(())
}

pub fn qsmooth(input: &InputSpec, o: &Options, r: &mut Report) -> Result<(), CliError> {
    let v = input.variety(o.field, o.seed)?;
    let (mut verdicts, mut off) = (Vec::new(), Vec::new());
    for name in &input.ambient.vars {
        match quasismooth_check(&v, &Location::Point { variable: name.clone() }, o.field.prime()) {
            Ok(q) => verdicts.push(q),
            Err(SingularError::NotOnVariety(_)) => off.push(format!("p_{name}")),
            Err(e) => return Err(e.into()),
        }
    }
    verdicts.push(quasismooth_check(&v, &Location::Sampled { count: o.samples, seed: o.seed }, o.field.prime())?);
    let all = verdicts.iter().all(|q| !q.on_variety || q.quasismooth);
    r.push("off_variety", &off)?;
    r.push("verdicts", &verdicts)?;
    r.push("quasismooth", &all)?;
    Ok(())
}

/// The germ at a coordinate point, modulo the cyclic group when its weight exceeds one.
fn local_germ(input: &InputSpec, v: &WciSpec, point: &str) -> Result<(Germ, i64), CliError> {
    let vars = &input.ambient.vars;
    let i = vars.iter().position(|n| n == point).ok_or_else(|| CliError::Validation(format!("unknown point variable {point}")))?;
    let r = input.ambient.weights[i];
    let others: Vec<&String> = vars.iter().filter(|n| *n != point).collect();
    let ring = Ring::new(&others);
    let eqs = v.equations.iter().map(|f| f.set(&[(point, 1)]).embed(&ring)).collect::<Result<Vec<_>, _>>()?;
    let mut germ = Germ::new(&ring, eqs);
    if r > 1 {
        let action: Vec<i64> = (0..vars.len()).filter(|&k| k != i).map(|k| input.ambient.weights[k] % r).collect();
        germ = germ.with_quotient(r, &action);
    }
    Ok((germ, r))
}

pub fn blowup(input: &InputSpec, center: &Center, o: &Options, r: &mut Report) -> Result<(), CliError> {
    let v = input.variety(o.field, o.seed)?;
    let (germ, index) = local_germ(input, &v, &center.point)?;
    if center.weights.len() != germ.ring.len() {
        return Err(CliError::Validation(format!("{} weights for {} local coordinates", center.weights.len(), germ.ring.len())));
    }
    let b = WeightVector::new(center.weights.clone(), center.denominator.unwrap_or(index));
    r.push("germ", &json!({ "center": format!("p_{}", center.point), "local": germ.label() }))?;
    r.push("discrepancy", &weighted_blowup_discrepancy(&germ, &b, o.trials, o.seed)?)?;
    Ok(())
}

pub fn two_ray(input: &InputSpec, center: &Center, r: &mut Report) -> Result<(), CliError> {
    let t = blowup_ambient(&input.wps()?, &center.point, &center.weights, "u")?;
    r.push("toric", &t)?;
    r.push("trace", &run_two_ray_game(&t)?)?;
    Ok(())
}

fn x1214(input: &InputSpec, o: &Options) -> Result<WciSpec, CliError> {
    if input.wps()? != x1214_ambient() || input.degrees != [12, 14] {
        return Err(CliError::Validation("expected a (12,14) complete intersection in P(1,2,3,4,7,11) with vars x,y,z,t,v,w".into()));
    }
    input.variety(o.field, o.seed)
}

pub fn link(input: &InputSpec, o: &Options, r: &mut Report) -> Result<(), CliError> {
    let v = x1214(input, o)?;
    let nf = normal_form_x1214(&v.equations[0], &v.equations[1])?;
    r.push("normal_form", &nf)?;
    r.push("link", &construct_link_sigma(&nf)?)?;
    Ok(())
}

pub fn classify(input: &InputSpec, o: &Options, r: &mut Report) -> Result<(), CliError> {
    let v = x1214(input, o)?;
    let opts = ClassifyOptions { samples: o.samples, seed: o.seed, prime: o.field.prime(), trials: o.trials };
    let c = classify_links(&v, &opts)?;
    r.assumptions = c.assumptions.clone();
    r.push("classification", &c)?;
    r.status.message = c.summary.clone();
    Ok(())
}
