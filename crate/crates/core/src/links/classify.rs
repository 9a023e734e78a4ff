//! All candidate links from X(12,14) and from its degree-7 partner.

use serde::Serialize;

use super::curves::{exclude_degree_one_curves, CurveCertificate};
use super::exclusion::{run_exclusion_blowups, Exclusions};
use super::hat_x::{singularity_census_hat_x, HatXCensus};
use super::involution::{build_involutions, Involutions};
use super::normal_form::{normal_form_x1214, NormalFormX1214};
use super::report::{LinkReport, LinkVerdict};
use super::sigma::{construct_link_sigma, SigmaLink};
use super::LinksError;
use crate::ambient::{cone_calculus, WciSpec};
use crate::qpoly::DEFAULT_PRIME;
use crate::singular::{quadratic_involution_test, singularity_census, Census, InvolutionVerdict, QuadraticDecomposition};

pub const SMOOTH_ON_X: &str = "[DG23 Cor 7.2, 7.11]";
pub const SMOOTH_AND_HALF_POINT: &str = "[OkSolid Lem 4.5, 4.9]";
pub const CURVE_DEGREE_BOUND: &str = "[OkII Lem 2.9]";
pub const SMOOTH_CURVE_UNTWISTING: &str = "[CPR Thm 5.1.1 Step 2]";

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClassifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub prime: u64,
    pub trials: u32,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { samples: 20, seed: 0, prime: DEFAULT_PRIME, trials: 5 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub normal_form: NormalFormX1214,
    pub census: Census,
    pub sigma: SigmaLink,
    pub hat_census: HatXCensus,
    pub third_point: QuadraticDecomposition,
    pub curves: CurveCertificate,
    pub exclusions: Exclusions,
    pub involutions: Option<Involutions>,
    pub from_x: Vec<LinkReport>,
    pub from_hat_x: Vec<LinkReport>,
    pub elementary_links_from_hat_x: usize,
    /// Discrepancy-1 divisors over the cE6 point, by extraction.
    pub divisors: Vec<String>,
    /// Cited exclusions the conclusion rests on.
    pub assumptions: Vec<String>,
    pub summary: String,
}

pub fn classify_links(x: &WciSpec, opts: &ClassifyOptions) -> Result<Classification, LinksError> {
    if x.equations.len() != 2 {
        return Err(LinksError::Shape("expected a codimension-2 complete intersection".into()));
    }
    let nf = normal_form_x1214(&x.equations[0], &x.equations[1])?;
    let census = singularity_census(&nf.spec(), opts.samples, opts.seed, opts.prime)?;
    let singular: Vec<String> = census.singular_points().iter().map(|r| r.point.clone()).collect();
    if singular != ["p_w"] || !census.clean() {
        return Err(LinksError::Inconsistency(format!("singular points of X: {singular:?}")));
    }
    let sigma = construct_link_sigma(&nf)?;
    let hx = sigma.hat_x.clone();
    let lambda_nonzero = !hx.lambda.is_zero();

    let sigma_cones = cone_calculus(&sigma.trace, &sigma.proper_transform, None)?;
    if !sigma_cones.anticanonical_in_interior {
        return Err(LinksError::Inconsistency("-K is not interior to the movable cone of the link".into()));
    }
    let from_x = vec![
        LinkReport {
            name: "link from X".into(),
            center: "p_w".into(),
            extraction: Some(sigma.kawamata.clone()),
            trace: Some(sigma.trace.clone()),
            cones: Some(sigma_cones),
            verdict: LinkVerdict::ElementaryLink { target: hx.spec() },
        },
        LinkReport::cited("smooth points and curves of X", "smooth", SMOOTH_ON_X),
    ];

    let hat_census = singularity_census_hat_x(&hx, opts.samples, opts.seed, opts.prime)?;
    let third_point = quadratic_involution_test(&hx.spec())?;
    let curves = exclude_degree_one_curves(&hx, opts.prime, opts.seed)?;
    let exclusions = run_exclusion_blowups(&hx, opts.seed)?;
    let involutions = if lambda_nonzero { Some(build_involutions(&nf, &hx)?) } else { None };
    if let Some(inv) = &involutions {
        if !inv.chi_hat_preserves || inv.valuation.of_v == inv.valuation.of_image_of_v {
            return Err(LinksError::Inconsistency("the second extraction is not distinct from the first".into()));
        }
    }

    let mut divisors = vec!["E (link back to X)".to_string(), "F1 (4,1,2,1)".into(), "F2 (2,1,2,1,4)".into()];
    if lambda_nonzero {
        divisors.push("E' (image of E under the involution)".into());
    }
    if divisors.len() != hat_census.germ.count {
        return Err(LinksError::Inconsistency(format!(
            "{} extractions against {} divisors of discrepancy 1",
            divisors.len(),
            hat_census.germ.count
        )));
    }

    let back = LinkVerdict::ElementaryLink { target: nf.spec() };
    let mut from_hat_x = vec![LinkReport {
        name: "inverse link to X".into(),
        center: "p_z".into(),
        extraction: Some(hat_census.germ.exceptional.clone()),
        trace: None,
        cones: None,
        verdict: back.clone(),
    }];
    if lambda_nonzero {
        from_hat_x.push(LinkReport {
            name: "inverse of the second link to X".into(),
            center: "p_z".into(),
            extraction: Some(hat_census.germ.exceptional.clone()),
            trace: None,
            cones: None,
            verdict: back,
        });
    }
    from_hat_x.push(exclusions.first.clone());
    from_hat_x.push(exclusions.second.clone());
    from_hat_x.push(LinkReport::cited("smooth points and p_t", "smooth, p_t", SMOOTH_AND_HALF_POINT));
    from_hat_x.push(LinkReport {
        name: "quotient point p_v".into(),
        center: "p_v".into(),
        extraction: None,
        trace: None,
        cones: None,
        verdict: match &third_point.verdict {
            InvolutionVerdict::NotMaximal { quotient } => LinkVerdict::NotMaximal { certificate: quotient.clone() },
            InvolutionVerdict::SelfLink { .. } => LinkVerdict::ElementaryLink { target: hx.spec() },
        },
    });
    from_hat_x.push(LinkReport::cited("curves through no quotient point", "curves", CURVE_DEGREE_BOUND));
    from_hat_x.push(LinkReport::cited("degree-1 curves in the smooth locus", "curves", SMOOTH_CURVE_UNTWISTING));
    let elementary = from_hat_x.iter().filter(|r| r.verdict.is_link()).count();
    let assumptions: Vec<String> = from_x
        .iter()
        .chain(&from_hat_x)
        .filter_map(|r| match &r.verdict {
            LinkVerdict::CitedExclusion { reference } => Some(reference.clone()),
            _ => None,
        })
        .collect();
    let summary = format!(
        "X has a single elementary link, to the degree-7 hypersurface; it has {elementary} elementary link(s) back to X and no others, so X is birationally solid assuming {}",
        assumptions.join(", ")
    );
    Ok(Classification {
        normal_form: nf,
        census,
        sigma,
        hat_census,
        third_point,
        curves,
        exclusions,
        involutions,
        from_x,
        from_hat_x,
        elementary_links_from_hat_x: elementary,
        divisors,
        assumptions,
        summary,
    })
}
