//! Exit-code classification: 1 for bad invocations, 2 for bad data.

use idemetric::analytics::AnalyticsError;
use idemetric::generators::GenError;
use idemetric::metrics::MetricsError;
use idemetric::routing::RoutingError;

pub type CliResult<T> = anyhow::Result<T>;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

/// A parameter the caller got wrong.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn gen_is_usage(e: &GenError) -> bool {
    matches!(e, GenError::InvalidParameter(_) | GenError::NotPerfectSquare(_))
}

fn analytics_is_usage(e: &AnalyticsError) -> bool {
    matches!(e, AnalyticsError::InvalidParameter(_) | AnalyticsError::InexactScalar(_))
}

pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        let is_usage = if cause.is::<Usage>() {
            true
        } else if let Some(e) = cause.downcast_ref::<GenError>() {
            gen_is_usage(e)
        } else if let Some(e) = cause.downcast_ref::<AnalyticsError>() {
            analytics_is_usage(e)
        } else if let Some(e) = cause.downcast_ref::<MetricsError>() {
            match e {
                MetricsError::InvalidParameter(_) => true,
                MetricsError::Generator(g) => gen_is_usage(g),
                MetricsError::Analytics(a) => analytics_is_usage(a),
                _ => false,
            }
        } else if let Some(e) = cause.downcast_ref::<RoutingError>() {
            matches!(e, RoutingError::InvalidParameter(_) | RoutingError::OutOfRange { .. })
        } else {
            continue;
        };
        return if is_usage { EXIT_USAGE } else { EXIT_DATA };
    }
    EXIT_DATA
}
