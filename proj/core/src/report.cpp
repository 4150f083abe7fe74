namespace qweyl {
}  // namespace qweyl
