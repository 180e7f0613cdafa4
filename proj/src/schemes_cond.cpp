namespace cvforge {
}  // namespace cvforge
