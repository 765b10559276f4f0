/// Cooperative interruption for the long-running searches.
///
/// Implementations are polled from inner loops, so `expired` should be cheap.
pub trait Budget {
    fn expired(&self) -> bool;
}

/// A budget that never runs out.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn expired(&self) -> bool {
        false
    }
}

impl<B: Budget + ?Sized> Budget for &B {
    fn expired(&self) -> bool {
        (**self).expired()
    }
}
