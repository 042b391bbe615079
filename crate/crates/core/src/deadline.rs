use std::time::{Duration, Instant};

/// Returned when a computation runs past its [`Deadline`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("time limit exceeded")]
pub struct Timeout;

/// Cooperative cancellation point for long symbolic computations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Deadline {
    at: Option<Instant>,
}

impl Deadline {
    pub fn none() -> Self {
        Deadline { at: None }
    }

    pub fn after(limit: Duration) -> Self {
        Deadline {
            at: Some(Instant::now() + limit),
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.at.is_none()
    }

    pub fn check(&self) -> Result<(), Timeout> {
        match self.at {
            Some(t) if Instant::now() >= t => Err(Timeout),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_limit_expires_immediately() {
        assert_eq!(Deadline::after(Duration::ZERO).check(), Err(Timeout));
        assert!(Deadline::none().check().is_ok());
        assert!(Deadline::after(Duration::from_secs(3600)).check().is_ok());
    }
}
