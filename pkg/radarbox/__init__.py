"""
Radarbox - synthetic FMCW radar detection pipeline.

Sub-packages:
    - core: shared types, radar configuration, file formats
    - sim: scenes, scatterers and raw cube simulation
    - dsp: range-azimuth FFT, MUSIC, BEV resampling, CA-CFAR, baseline detector
    - geometry: oriented boxes as polygons, IoU, NMS and soft-NMS
    - detmath: anchors, target assignment, box encoding, losses, toy head
    - autolabel: symmetry transforms, fusion and response filtering
    - eval: matching, average precision and format reports
    - cli: command line entry point
"""

__version__ = "0.1.0"
