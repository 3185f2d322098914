namespace heatkit {
}
