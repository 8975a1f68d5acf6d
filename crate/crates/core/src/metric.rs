/// A distance function on points of type `P`.
///
/// Implemented by [`MetricKind`](crate::cube::MetricKind) for cube points,
/// by [`WedgeSpace`](crate::wedge::WedgeSpace) for wedge points, and by any
/// closure `Fn(&P, &P) -> f64`.
pub trait Metric<P> {
    fn distance(&self, a: &P, b: &P) -> f64;
}

impl<P, F> Metric<P> for F
where
    F: Fn(&P, &P) -> f64,
{
    fn distance(&self, a: &P, b: &P) -> f64 {
        self(a, b)
    }
}
