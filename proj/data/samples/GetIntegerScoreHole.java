List<Integer> getIntegerScore(String path) {
  ArrayList<Integer> result = new ArrayList<Integer>();
  InputStreamReader rd = new InputStreamReader(new FileInputStream(path));
  BufferedReader br = new BufferedReader(rd);
  String str;
  while ((str = br.readLine()) != null) {
    int score;
    __HOLE__;
    result.add(score);
  }
  br.close();
  return result;
}
