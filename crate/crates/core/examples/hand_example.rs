//! DSRE, neighbor sets and reconstructions on a four-point line.
//!
//! `cargo run --example hand_example`

use unn::{dsre, knn_reconstruct, pointwise_error, Dataset, LatentOrdering};

fn main() -> unn::Result<()> {
    let data = Dataset::from_rows(&[[0.0], [1.0], [2.0], [3.0]])?;

    for order in [vec![0, 1, 2, 3], vec![3, 1, 0, 2], vec![1, 3, 0, 2]] {
        let ord = LatentOrdering::from_order(order.clone())?;
        println!("ordering {order:?}");
        for i in 0..data.len() {
            let slot = ord.slot_of(i).unwrap();
            let neighbors = ord.neighbors(slot, 2)?.patterns(&ord);
            let recon = knn_reconstruct(i, &ord, &data, 2)?;
            let err = pointwise_error(i, &ord, &data, 2)?;
            println!("  y{i} slot {slot} neighbors {neighbors:?} recon {:.3} error {err:.4}", recon[0]);
        }
        println!("  dsre(K=2) = {}", dsre(&ord, &data, 2)?);
    }
    Ok(())
}
