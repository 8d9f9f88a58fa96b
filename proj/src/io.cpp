// see matching header; implemented in a later commit
