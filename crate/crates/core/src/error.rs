use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every amplitude computation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("argument outside the function domain: {0}")]
    Domain(String),

    #[error("quadrature did not converge for {what} after {nodes} nodes (last estimate {estimate}, gap {gap:e})")]
    NotConverged {
        what: &'static str,
        nodes: usize,
        estimate: Complex64,
        gap: f64,
    },

    #[error("kinematically closed channel: k^2 = {k_squared} does not exceed 2*dE = {two_delta_e}")]
    KinematicallyClosed { k_squared: f64, two_delta_e: f64 },

    #[error("tilt angle undefined for a vanishing momentum transfer")]
    UndefinedOrientation,

    #[error("q_z never vanishes: (k/k')cos(alpha) = {cos_theta0} > 1")]
    NoZero { cos_theta0: f64 },

    #[error("orbitals carry different nuclear charges ({initial} vs {final_})")]
    MismatchedCharge { initial: f64, final_: f64 },

    #[error("no closed-form amplitude for {0}; use the matrix-element oracle instead")]
    UnsupportedTransition(String),

    #[error("elastic amplitude diverges in the forward direction (q = {q:e})")]
    ForwardDivergence { q: f64 },

    #[error("integrand is singular on the azimuthal circle (q_min = {q_min:e})")]
    SingularIntegrand { q_min: f64 },

    #[error("singular Coulomb kinematics: r1 = 0 (k_perp = {k_perp}, k_perp' = {k_perp_prime}, q_z = {q_z})")]
    SingularKinematics {
        k_perp: f64,
        k_perp_prime: f64,
        q_z: f64,
    },

    #[error("Bessel series not converged at |mu| = {truncation}: last term {last_term:e} vs partial sum {partial_sum:e}")]
    SeriesNotConverged {
        truncation: u32,
        last_term: f64,
        partial_sum: f64,
    },

    #[error("invalid orbital: {0}")]
    InvalidOrbital(String),

    #[error("invalid aperture: {0}")]
    InvalidAperture(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("at theta = {theta:e} rad: {source}")]
    AtAngle { theta: f64, source: Box<Error> },
}

impl Error {
    /// The underlying error with any angle annotation stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtAngle { source, .. } => source.root(),
            other => other,
        }
    }
}
