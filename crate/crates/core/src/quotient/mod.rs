//! Arithmetic of the non-rationally-connected singular cases: `R_X` from
//! the Du Val profile of `S = Y/G`, `c1c2 = 48/|G|`, and the halving that
//! turns K3 rows into Enriques rows.

mod profile;
mod scenario;

pub use profile::{indices_from_profile, ProfileError, SingularityProfile};
pub use scenario::{
    abelian_cover_c1c2, check_scenario, compare_scenarios, derive_enriques, parse_scenarios,
    quotient_c1c2, render_scenarios, table4, table5, CheckOutcome, CoverType, QuotientError,
    QuotientScenario, ScenarioCheck, ScenarioDiff, ScenarioFixtureError, ScenarioReport,
    ScenarioRow, TABLE4_FIXTURE, TABLE5_FIXTURE,
};
