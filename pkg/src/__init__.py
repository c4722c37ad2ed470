# Inversive Distance Circle Packing Toolkit
